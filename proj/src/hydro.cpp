#include "fishdyn/hydro.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>

namespace fishdyn {

namespace {

double clamp_unit(double x) {
    return std::clamp(x, -1.0, 1.0);
}

double sign_of(double x) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return -1.0;
    return 0.0;
}

} // namespace

Eigen::Vector3d lift_direction(const Eigen::Vector3d& v_hat, const Eigen::Vector3d& normal) {
    const double normal_inflow = normal.dot(v_hat); // sin(attack angle), signed
    const double sin_abs = std::abs(normal_inflow);
    const Eigen::Vector3d raw = normal_inflow > 0.0 ? Eigen::Vector3d(v_hat * sin_abs - normal)
                                                    : Eigen::Vector3d(v_hat * sin_abs + normal);
    const double norm = raw.norm(); // equals cos(attack angle)
    if (norm < kDirectionEps) {
        return Eigen::Vector3d::Zero();
    }
    return raw / norm;
}

Eigen::Vector3d tail_cop_offset(double xi1, const ActuatorGeometry& geometry) {
    return {geometry.tail_joint_m.x() - geometry.tail_cop_radius_m * std::cos(xi1),
            geometry.tail_joint_m.y() - geometry.tail_cop_radius_m * std::sin(xi1),
            geometry.tail_joint_m.z()};
}

Eigen::Vector3d tail_cop_velocity(const BodyState& state, double xi1, double xi1_rate,
                                  const ActuatorGeometry& geometry) {
    const Eigen::Vector3d cop_from_origin = tail_cop_offset(xi1, geometry);
    const Eigen::Vector3d cop_from_joint(-geometry.tail_cop_radius_m * std::cos(xi1),
                                         -geometry.tail_cop_radius_m * std::sin(xi1), 0.0);
    const Eigen::Vector3d omega_tail(0.0, 0.0, xi1_rate);
    return state.velocity_body + state.omega_body.cross(cop_from_origin) +
           omega_tail.cross(cop_from_joint);
}

TailForces tail_forces(const Eigen::Vector3d& cop_velocity, double xi1,
                       const HydroParams& params) {
    TailForces out;
    const double speed = cop_velocity.norm();
    if (speed < kSpeedEps) {
        return out;
    }

    const Eigen::Vector3d v_hat = cop_velocity / speed;
    const Eigen::Vector3d normal(-std::sin(xi1), std::cos(xi1), 0.0);
    out.attack_angle_rad = std::asin(clamp_unit(normal.dot(v_hat)));

    const double q = 0.5 * params.rho_kgm3 * speed * speed * params.tail_area_m2;
    out.drag = -q * params.tail_drag(out.attack_angle_rad) * v_hat;
    out.lift = q * params.tail_lift(out.attack_angle_rad) * lift_direction(v_hat, normal);
    return out;
}

Eigen::Vector3d tail_torque(const Eigen::Vector3d& cop_offset, const Eigen::Vector3d& tail_force) {
    return cop_offset.cross(tail_force);
}

BodyPlaneForces body_plane_forces(const BodyState& state, int plane, const HydroParams& params) {
    BodyPlaneForces out;

    // Plane 1 sees the x-z projection of the body velocity against the z
    // normal; plane 2 the x-y projection against the y normal.
    Eigen::Vector3d velocity = state.velocity_body;
    Eigen::Vector3d normal;
    if (plane == 1) {
        velocity.y() = 0.0;
        normal = Eigen::Vector3d::UnitZ();
    } else {
        velocity.z() = 0.0;
        normal = Eigen::Vector3d::UnitY();
    }

    const double speed = velocity.norm();
    if (speed < kSpeedEps) {
        return out;
    }
    out.speed_squared = speed * speed;

    const Eigen::Vector3d v_hat = velocity / speed;
    if (plane == 1) {
        out.reference_area_m2 = v_hat.x() * v_hat.x() * params.area_diag_m2.x() +
                                v_hat.z() * v_hat.z() * params.area_diag_m2.z();
    } else {
        out.reference_area_m2 = v_hat.x() * v_hat.x() * params.area_diag_m2.x() +
                                v_hat.y() * v_hat.y() * params.area_diag_m2.y();
    }
    out.attack_angle_rad = std::asin(clamp_unit(normal.dot(v_hat)));

    const CoefficientModel& drag_curve = plane == 1 ? params.body_drag1 : params.body_drag2;
    const CoefficientModel& lift_curve = plane == 1 ? params.body_lift1 : params.body_lift2;
    const double q = 0.5 * params.rho_kgm3 * out.speed_squared * out.reference_area_m2;
    out.drag = -q * drag_curve(out.attack_angle_rad) * v_hat;
    out.lift = q * lift_curve(out.attack_angle_rad) * lift_direction(v_hat, normal);
    return out;
}

Eigen::Vector3d damping_torque(const Eigen::Vector3d& omega_body, const HydroParams& params) {
    return params.damping_diag_nms.cwiseProduct(omega_body);
}

Eigen::Vector3d impact_torque(const BodyState& state, double alpha_b1, double alpha_b2,
                              const HydroParams& params) {
    Eigen::Vector3d v1 = state.velocity_body;
    v1.y() = 0.0;
    Eigen::Vector3d v2 = state.velocity_body;
    v2.z() = 0.0;

    Eigen::Vector3d torque = Eigen::Vector3d::Zero();
    const double s1 = v1.squaredNorm();
    if (s1 >= kSpeedEps * kSpeedEps) {
        const Eigen::Vector3d v_hat = v1 / std::sqrt(s1);
        const double area = v_hat.x() * v_hat.x() * params.area_diag_m2.x() +
                            v_hat.z() * v_hat.z() * params.area_diag_m2.z();
        torque.y() = 0.5 * params.rho_kgm3 * s1 * area * params.impact_pitch(alpha_b1) *
                     sign_of(alpha_b1);
    }
    const double s2 = v2.squaredNorm();
    if (s2 >= kSpeedEps * kSpeedEps) {
        const Eigen::Vector3d v_hat = v2 / std::sqrt(s2);
        const double area = v_hat.x() * v_hat.x() * params.area_diag_m2.x() +
                            v_hat.y() * v_hat.y() * params.area_diag_m2.y();
        torque.z() = 0.5 * params.rho_kgm3 * s2 * area * params.impact_yaw(alpha_b2) *
                     sign_of(alpha_b2);
    }
    return torque;
}

GravityBuoyancy gravity_buoyancy(const Attitude& attitude, const MassModel& mass,
                                 const Eigen::Vector3d& center_of_mass) {
    // Inertial gravity direction is +z (down); rotate into the body frame.
    const Eigen::Vector3d g_body =
        rotation_body_to_inertial(attitude).transpose() * Eigen::Vector3d(0.0, 0.0, kGravity);

    GravityBuoyancy out;
    out.gravity_force = mass.total_mass_kg * g_body;
    out.buoyancy_force = -mass.buoyancy_mass_kg * g_body;
    out.gravity_moment = center_of_mass.cross(out.gravity_force);
    return out;
}

} // namespace fishdyn
