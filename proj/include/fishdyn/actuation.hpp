#pragma once

#include <Eigen/Core>

#include "fishdyn/errors.hpp"

namespace fishdyn {

/// Sinusoidal tail command: xi1(t) = offset + amplitude * sin(2*pi*f*t).
struct TailGait {
    double offset_rad{0.0};
    double amplitude_rad{0.0};
    double frequency_hz{0.0};
};

/// Weight-block command: slider travel from its neutral position (signed,
/// along the guideway) and the rotating-bracket angle about the body x axis.
struct BlockCommand {
    double slider_travel_m{0.0};  // delta d
    double bracket_angle_rad{0.0}; // xi2
};

/// Mass distribution. The vehicle is split into the movable weight block
/// and everything else ("body"); the body is described by its static
/// moments about the body axes so the combined centre of mass follows the
/// block command.
struct MassModel {
    double total_mass_kg{0.0};
    double block_mass_kg{0.0};
    double buoyancy_mass_kg{0.0};
    Eigen::Vector3d body_static_moment_kgm{Eigen::Vector3d::Zero()};  // M_ew
    Eigen::Vector3d body_inertia_diag_kgm2{Eigen::Vector3d::Zero()};  // about body CoM
    Eigen::Vector3d block_inertia_diag_kgm2{Eigen::Vector3d::Zero()}; // about block CoM
};

/// Fixed geometry of the barycentre mechanism and tail.
struct ActuatorGeometry {
    Eigen::Vector3d bracket_offset_m{Eigen::Vector3d::Zero()}; // O_rb in body frame
    Eigen::Vector3d tail_joint_m{Eigen::Vector3d::Zero()};     // O_t in body frame
    double motor3_offset_m{0.0};    // d1: motor-3 shaft ahead of O_rb
    double bracket_arm_m{0.0};      // d2: bracket pivot to block CoM
    double rod_end_offset_m{0.0};   // d3: rod end to block CoM
    double slider_neutral_m{0.0};   // s_w0: slider position with zero pitch/roll
    double tail_cop_radius_m{0.0};  // r_c: tail joint to tail centre of pressure
    double slider_min_m{-0.02};
    double slider_max_m{0.02};
};

/// Tail angle xi1(t) in radians.
double tail_angle(double t, const TailGait& gait);

/// Tail angular rate dxi1/dt in rad/s.
double tail_rate(double t, const TailGait& gait);

/// Centre of mass of the weight block in the body frame.
/// Throws SliderRangeError when the commanded travel leaves the configured
/// slider range.
Eigen::Vector3d block_position(const BlockCommand& cmd, const ActuatorGeometry& geometry);

/// Centre of mass of the whole vehicle in the body frame.
Eigen::Vector3d center_of_mass(const BlockCommand& cmd, const MassModel& mass,
                               const ActuatorGeometry& geometry);

/// Diagonal of the vehicle inertia tensor about the body origin, combining
/// block and body terms with their parallel-axis contributions. Products of
/// inertia of the offset parts are neglected; the tensor stays diagonal.
Eigen::Vector3d inertia_about_origin(const BlockCommand& cmd, const MassModel& mass,
                                     const ActuatorGeometry& geometry);

} // namespace fishdyn
