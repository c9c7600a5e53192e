#pragma once

#include <Eigen/Core>

#include "fishdyn/errors.hpp"

namespace fishdyn {

/// Threshold on |cos(pitch)| below which Euler-rate conversion aborts.
inline constexpr double kGimbalLockEps = 1e-6;

/// Roll/pitch/yaw attitude, radians. The rotation convention is the
/// aerospace Z-Y-X sequence: body x forward, y starboard, z down.
struct Attitude {
    double roll{0.0};
    double pitch{0.0};
    double yaw{0.0};
};

/// Integrated vehicle state. Position is inertial; velocities are
/// body-frame. Mixing frames requires an explicit transform below.
struct BodyState {
    Eigen::Vector3d position_inertial{Eigen::Vector3d::Zero()}; // m
    Attitude attitude{};
    Eigen::Vector3d velocity_body{Eigen::Vector3d::Zero()}; // m/s
    Eigen::Vector3d omega_body{Eigen::Vector3d::Zero()};    // rad/s
};

/// Body-to-inertial rotation matrix R_bI for the given attitude.
Eigen::Matrix3d rotation_body_to_inertial(const Attitude& attitude);

/// V_I = R_bI * V_b
Eigen::Vector3d body_velocity_to_inertial(const Attitude& attitude,
                                          const Eigen::Vector3d& velocity_body);

/// V_b = R_bI^T * V_I
Eigen::Vector3d inertial_velocity_to_body(const Attitude& attitude,
                                          const Eigen::Vector3d& velocity_inertial);

/// Map body angular velocity to Euler-angle rates (roll/pitch/yaw dot).
/// Throws GimbalLockError when |cos(pitch)| <= kGimbalLockEps.
Eigen::Vector3d body_rates_to_euler_rates(const Attitude& attitude,
                                          const Eigen::Vector3d& omega_body);

bool is_finite(const Attitude& attitude);
bool is_finite(const BodyState& state);

} // namespace fishdyn
