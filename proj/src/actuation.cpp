#include "fishdyn/actuation.hpp"

#include <cmath>

namespace fishdyn {

namespace {

// Parallel-axis term about the body origin for a point offset r.
Eigen::Vector3d parallel_axis_diag(const Eigen::Vector3d& r) {
    return {r.y() * r.y() + r.z() * r.z(),
            r.x() * r.x() + r.z() * r.z(),
            r.x() * r.x() + r.y() * r.y()};
}

} // namespace

double tail_angle(double t, const TailGait& gait) {
    return gait.offset_rad + gait.amplitude_rad * std::sin(2.0 * M_PI * gait.frequency_hz * t);
}

double tail_rate(double t, const TailGait& gait) {
    const double w = 2.0 * M_PI * gait.frequency_hz;
    return w * gait.amplitude_rad * std::cos(w * t);
}

Eigen::Vector3d block_position(const BlockCommand& cmd, const ActuatorGeometry& geometry) {
    if (cmd.slider_travel_m < geometry.slider_min_m ||
        cmd.slider_travel_m > geometry.slider_max_m) {
        throw SliderRangeError("slider travel " + std::to_string(cmd.slider_travel_m) +
                               " m outside configured range [" +
                               std::to_string(geometry.slider_min_m) + ", " +
                               std::to_string(geometry.slider_max_m) + "] m");
    }

    const double slider = geometry.slider_neutral_m + cmd.slider_travel_m;
    Eigen::Vector3d p;
    p.x() = geometry.bracket_offset_m.x() + geometry.motor3_offset_m -
            (slider - geometry.rod_end_offset_m);
    p.y() = geometry.bracket_offset_m.y() + geometry.bracket_arm_m * std::sin(cmd.bracket_angle_rad);
    p.z() = geometry.bracket_offset_m.z() + geometry.bracket_arm_m * std::cos(cmd.bracket_angle_rad);
    return p;
}

Eigen::Vector3d center_of_mass(const BlockCommand& cmd, const MassModel& mass,
                               const ActuatorGeometry& geometry) {
    const Eigen::Vector3d block = block_position(cmd, geometry);
    return (mass.body_static_moment_kgm + mass.block_mass_kg * block) / mass.total_mass_kg;
}

Eigen::Vector3d inertia_about_origin(const BlockCommand& cmd, const MassModel& mass,
                                     const ActuatorGeometry& geometry) {
    const double body_mass = mass.total_mass_kg - mass.block_mass_kg;
    const Eigen::Vector3d block_com = block_position(cmd, geometry);
    const Eigen::Vector3d body_com = mass.body_static_moment_kgm / body_mass;

    return mass.body_inertia_diag_kgm2 + body_mass * parallel_axis_diag(body_com) +
           mass.block_inertia_diag_kgm2 + mass.block_mass_kg * parallel_axis_diag(block_com);
}

} // namespace fishdyn
