#pragma once

#include <Eigen/Core>

#include "fishdyn/actuation.hpp"
#include "fishdyn/coefficients.hpp"
#include "fishdyn/frames.hpp"

namespace fishdyn {

/// Gravitational acceleration, m/s^2. The inertial z axis points down
/// (gravity is +z_I); "up" is negative z throughout.
inline constexpr double kGravity = 9.81;

/// Below this speed the quasi-steady forces are taken as zero (dynamic
/// pressure vanishes) and the attack angle is reported as zero.
inline constexpr double kSpeedEps = 1e-12;

/// Lift-direction denominator guard: at normal incidence the direction
/// formula is 0/0 and the physical lift is zero.
inline constexpr double kDirectionEps = 1e-9;

/// Fluid parameters and the eight fitted coefficient curves.
struct HydroParams {
    double rho_kgm3{1000.0};
    double tail_area_m2{0.0};
    Eigen::Vector3d area_diag_m2{Eigen::Vector3d::Zero()};   // S_xx, S_yy, S_zz
    Eigen::Vector3d damping_diag_nms{Eigen::Vector3d::Zero()}; // C_wb, stored <= 0
    CoefficientModel tail_drag;
    CoefficientModel tail_lift;
    CoefficientModel body_drag1;
    CoefficientModel body_lift1;
    CoefficientModel body_drag2;
    CoefficientModel body_lift2;
    CoefficientModel impact_pitch;
    CoefficientModel impact_yaw;
};

/// Force and torque about the body origin, both in the body frame.
struct Wrench {
    Eigen::Vector3d force{Eigen::Vector3d::Zero()};  // N
    Eigen::Vector3d torque{Eigen::Vector3d::Zero()}; // N*m
};

/// Unit direction of the lift on a plate with unit normal `normal` moving
/// along unit velocity `v_hat`: perpendicular to the velocity in the
/// velocity-normal plane, opposing the plate's normal motion. Returns zero
/// at normal incidence, where the construction degenerates and the
/// physical lift vanishes.
Eigen::Vector3d lift_direction(const Eigen::Vector3d& v_hat, const Eigen::Vector3d& normal);

/// Vector from the body origin to the tail centre of pressure.
Eigen::Vector3d tail_cop_offset(double xi1, const ActuatorGeometry& geometry);

/// Velocity of the tail centre of pressure through the water: body
/// translation, body rotation, and the tail's own oscillation about its
/// joint.
Eigen::Vector3d tail_cop_velocity(const BodyState& state, double xi1, double xi1_rate,
                                  const ActuatorGeometry& geometry);

struct TailForces {
    Eigen::Vector3d lift{Eigen::Vector3d::Zero()};
    Eigen::Vector3d drag{Eigen::Vector3d::Zero()};
    double attack_angle_rad{0.0};
};

/// Quasi-steady lift and drag on the tail plate for a given centre-of-
/// pressure velocity. Drag opposes the velocity; lift is perpendicular to
/// it, with the side chosen by the sign of the normal inflow.
TailForces tail_forces(const Eigen::Vector3d& cop_velocity, double xi1,
                       const HydroParams& params);

/// Torque about the body origin produced by a force applied at the tail
/// centre of pressure.
Eigen::Vector3d tail_torque(const Eigen::Vector3d& cop_offset, const Eigen::Vector3d& tail_force);

struct BodyPlaneForces {
    Eigen::Vector3d lift{Eigen::Vector3d::Zero()};
    Eigen::Vector3d drag{Eigen::Vector3d::Zero()};
    double attack_angle_rad{0.0};
    double reference_area_m2{0.0}; // direction-dependent area from the tensor
    double speed_squared{0.0};     // |V_bi|^2 of the in-plane velocity
};

/// Body lift/drag evaluated on the projected velocity of plane 1 (x-z) or
/// plane 2 (x-y). The reference area is the quadratic form of the surface
/// area tensor along the flow direction.
BodyPlaneForces body_plane_forces(const BodyState& state, int plane, const HydroParams& params);

/// Rotation-opposing torque, linear in the body rates. The coefficients
/// are stored signed (negative); the product is applied as-is.
Eigen::Vector3d damping_torque(const Eigen::Vector3d& omega_body, const HydroParams& params);

/// Flow-impact torque about the body y and z axes (x component is
/// identically zero). The coefficient curves are tabulated on |alpha| and
/// applied odd-symmetrically so the torque changes side with the attack
/// angle.
Eigen::Vector3d impact_torque(const BodyState& state, double alpha_b1, double alpha_b2,
                              const HydroParams& params);

struct GravityBuoyancy {
    Eigen::Vector3d gravity_force{Eigen::Vector3d::Zero()};   // at the centre of mass
    Eigen::Vector3d buoyancy_force{Eigen::Vector3d::Zero()};  // at the body origin
    Eigen::Vector3d gravity_moment{Eigen::Vector3d::Zero()};  // O_bC_m x F_g
};

/// Gravity and buoyancy rotated into the body frame, plus the moment of
/// gravity about the body origin.
GravityBuoyancy gravity_buoyancy(const Attitude& attitude, const MassModel& mass,
                                 const Eigen::Vector3d& center_of_mass);

} // namespace fishdyn
