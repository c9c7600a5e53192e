#include "fishdyn/frames.hpp"

#include <cmath>

namespace fishdyn {

Eigen::Matrix3d rotation_body_to_inertial(const Attitude& attitude) {
    const double cphi = std::cos(attitude.roll);
    const double sphi = std::sin(attitude.roll);
    const double cth = std::cos(attitude.pitch);
    const double sth = std::sin(attitude.pitch);
    const double cpsi = std::cos(attitude.yaw);
    const double spsi = std::sin(attitude.yaw);

    Eigen::Matrix3d r;
    r(0, 0) = cpsi * cth;
    r(0, 1) = -spsi * cphi + cpsi * sth * sphi;
    r(0, 2) = spsi * sphi + cpsi * sth * cphi;
    r(1, 0) = spsi * cth;
    r(1, 1) = cpsi * cphi + spsi * sth * sphi;
    r(1, 2) = -cpsi * sphi + spsi * sth * cphi;
    r(2, 0) = -sth;
    r(2, 1) = cth * sphi;
    r(2, 2) = cth * cphi;
    return r;
}

Eigen::Vector3d body_velocity_to_inertial(const Attitude& attitude,
                                          const Eigen::Vector3d& velocity_body) {
    return rotation_body_to_inertial(attitude) * velocity_body;
}

Eigen::Vector3d inertial_velocity_to_body(const Attitude& attitude,
                                          const Eigen::Vector3d& velocity_inertial) {
    return rotation_body_to_inertial(attitude).transpose() * velocity_inertial;
}

Eigen::Vector3d body_rates_to_euler_rates(const Attitude& attitude,
                                          const Eigen::Vector3d& omega_body) {
    const double cphi = std::cos(attitude.roll);
    const double sphi = std::sin(attitude.roll);
    const double cth = std::cos(attitude.pitch);

    if (std::abs(cth) <= kGimbalLockEps) {
        throw GimbalLockError("pitch within " + std::to_string(kGimbalLockEps) +
                              " of +-pi/2; Euler-rate map is singular");
    }

    const double tth = std::tan(attitude.pitch);
    Eigen::Vector3d rates;
    rates(0) = omega_body(0) + sphi * tth * omega_body(1) + cphi * tth * omega_body(2);
    rates(1) = cphi * omega_body(1) - sphi * omega_body(2);
    rates(2) = (sphi * omega_body(1) + cphi * omega_body(2)) / cth;
    return rates;
}

bool is_finite(const Attitude& attitude) {
    return std::isfinite(attitude.roll) && std::isfinite(attitude.pitch) &&
           std::isfinite(attitude.yaw);
}

bool is_finite(const BodyState& state) {
    return state.position_inertial.allFinite() && is_finite(state.attitude) &&
           state.velocity_body.allFinite() && state.omega_body.allFinite();
}

} // namespace fishdyn
