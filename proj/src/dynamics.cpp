#include "fishdyn/dynamics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace fishdyn {

namespace {

Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
    Eigen::Matrix3d m;
    m << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
    return m;
}

// Largest-magnitude breakdown term, used to point at the likely culprit
// when the state blows up.
std::string dominant_term(const WrenchBreakdown& w) {
    struct Named {
        const char* name;
        const Eigen::Vector3d* v;
    };
    const Named terms[] = {
        {"gravity", &w.gravity},           {"buoyancy", &w.buoyancy},
        {"body_lift1", &w.body_lift1},     {"body_drag1", &w.body_drag1},
        {"body_lift2", &w.body_lift2},     {"body_drag2", &w.body_drag2},
        {"tail_lift", &w.tail_lift},       {"tail_drag", &w.tail_drag},
        {"gravity_moment", &w.gravity_moment}, {"damping_moment", &w.damping_moment},
        {"tail_moment", &w.tail_moment},   {"impact_moment", &w.impact_moment},
        {"com_force_moment", &w.com_force_moment},
    };
    const char* worst = "none";
    double worst_mag = -1.0;
    for (const auto& term : terms) {
        const double mag = term.v->norm();
        if (!std::isfinite(mag)) {
            return term.name;
        }
        if (mag > worst_mag) {
            worst_mag = mag;
            worst = term.name;
        }
    }
    return worst;
}

} // namespace

void validate_scenario(const Scenario& scenario) {
    const auto& mass = scenario.vehicle.mass;
    if (!(mass.block_mass_kg > 0.0) || !(mass.block_mass_kg < mass.total_mass_kg)) {
        throw ConfigError("block mass must satisfy 0 < m_w < m_total", "vehicle.m_block_kg");
    }
    if (!(mass.buoyancy_mass_kg > 0.0)) {
        throw ConfigError("buoyancy mass must be positive", "vehicle.m_buoyancy_kg");
    }
    if (!(mass.body_inertia_diag_kgm2.minCoeff() > 0.0) ||
        !(mass.block_inertia_diag_kgm2.minCoeff() > 0.0)) {
        throw ConfigError("inertia diagonals must be positive", "vehicle.inertia");
    }
    if (!(scenario.vehicle.hydro.rho_kgm3 > 0.0)) {
        throw ConfigError("water density must be positive", "hydro.rho_kgm3");
    }
    if (scenario.vehicle.hydro.damping_diag_nms.maxCoeff() > 0.0) {
        throw ConfigError("damping coefficients must be <= 0 (they oppose rotation)",
                          "hydro.damping");
    }
    if (scenario.gait.amplitude_rad < 0.0 || scenario.gait.frequency_hz < 0.0) {
        throw ConfigError("gait amplitude and frequency must be non-negative", "gait");
    }
    if (std::abs(scenario.gait.offset_rad) + scenario.gait.amplitude_rad >= M_PI / 2.0) {
        throw ConfigError("gait must keep |offset| + amplitude < pi/2", "gait");
    }
    if (scenario.block.bracket_angle_rad <= -M_PI || scenario.block.bracket_angle_rad > M_PI) {
        throw ConfigError("bracket angle must lie in (-pi, pi]", "block.xi2_deg");
    }
    if (!(scenario.duration_s > 0.0)) {
        throw ConfigError("duration must be positive", "scenario.duration_s");
    }
    if (!(scenario.dt_s > 0.0) || scenario.dt_s > scenario.duration_s) {
        throw ConfigError("dt must satisfy 0 < dt <= duration", "scenario.dt_s");
    }
    if (scenario.gait.frequency_hz > 0.0 &&
        scenario.dt_s > 1.0 / (20.0 * scenario.gait.frequency_hz)) {
        throw ConfigError("dt must resolve the gait: dt <= 1/(20*f1)", "scenario.dt_s");
    }
    // Surfaces a SliderRangeError for out-of-range commands up front.
    block_position(scenario.block, scenario.vehicle.geometry);
}

Eigen::Vector3d WrenchBreakdown::total_force() const {
    return gravity + buoyancy + body_lift1 + body_drag1 + body_lift2 + body_drag2 + tail_lift +
           tail_drag;
}

Eigen::Vector3d WrenchBreakdown::total_torque() const {
    return gravity_moment + damping_moment + tail_moment + impact_moment + com_force_moment;
}

WrenchBreakdown applied_wrench(const BodyState& state, double t, const Scenario& scenario) {
    const auto& vehicle = scenario.vehicle;
    WrenchBreakdown w;

    w.tail_angle_rad = tail_angle(t, scenario.gait);
    const double xi1_rate = tail_rate(t, scenario.gait);

    const Eigen::Vector3d cop_offset = tail_cop_offset(w.tail_angle_rad, vehicle.geometry);
    const Eigen::Vector3d cop_velocity =
        tail_cop_velocity(state, w.tail_angle_rad, xi1_rate, vehicle.geometry);
    const TailForces tail = tail_forces(cop_velocity, w.tail_angle_rad, vehicle.hydro);
    w.tail_lift = tail.lift;
    w.tail_drag = tail.drag;
    w.tail_attack_rad = tail.attack_angle_rad;
    w.tail_moment = tail_torque(cop_offset, tail.lift + tail.drag);

    const BodyPlaneForces plane1 = body_plane_forces(state, 1, vehicle.hydro);
    const BodyPlaneForces plane2 = body_plane_forces(state, 2, vehicle.hydro);
    w.body_lift1 = plane1.lift;
    w.body_drag1 = plane1.drag;
    w.body_lift2 = plane2.lift;
    w.body_drag2 = plane2.drag;
    w.body_attack1_rad = plane1.attack_angle_rad;
    w.body_attack2_rad = plane2.attack_angle_rad;

    const Eigen::Vector3d com = center_of_mass(scenario.block, vehicle.mass, vehicle.geometry);
    const GravityBuoyancy gb = gravity_buoyancy(state.attitude, vehicle.mass, com);
    w.gravity = gb.gravity_force;
    w.buoyancy = gb.buoyancy_force;
    w.gravity_moment = gb.gravity_moment;

    w.damping_moment = damping_torque(state.omega_body, vehicle.hydro);
    w.impact_moment =
        impact_torque(state, plane1.attack_angle_rad, plane2.attack_angle_rad, vehicle.hydro);

    w.com_force_moment = -com.cross(w.total_force());
    return w;
}

double GeneralizedSystem::condition_number() const {
    const Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>> svd(mass);
    const double smin = svd.singularValues().minCoeff();
    if (smin <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return svd.singularValues().maxCoeff() / smin;
}

GeneralizedSystem mass_matrix_and_bias(const BodyState& state,
                                       const Eigen::Vector3d& center_of_mass,
                                       const Eigen::Vector3d& inertia_diag, double total_mass) {
    const Eigen::Vector3d& v = state.velocity_body;
    const Eigen::Vector3d& omega = state.omega_body;
    const Eigen::Vector3d& r = center_of_mass;
    const double m = total_mass;

    GeneralizedSystem sys;
    sys.mass.topLeftCorner<3, 3>() = m * Eigen::Matrix3d::Identity();
    sys.mass.topRightCorner<3, 3>() = -m * skew(r);
    sys.mass.bottomLeftCorner<3, 3>() = m * skew(r);
    sys.mass.bottomRightCorner<3, 3>() = inertia_diag.asDiagonal();

    // Velocity-product terms of the six expanded equations, force rows
    // then moment rows.
    sys.bias(0) = m * (-v.y() * omega.z() + v.z() * omega.y() -
                       r.x() * (omega.z() * omega.z() + omega.y() * omega.y()) +
                       r.y() * omega.x() * omega.y() + r.z() * omega.x() * omega.z());
    sys.bias(1) = m * (-v.z() * omega.x() + v.x() * omega.z() -
                       r.y() * (omega.x() * omega.x() + omega.z() * omega.z()) +
                       r.z() * omega.y() * omega.z() + r.x() * omega.x() * omega.y());
    sys.bias(2) = m * (-v.x() * omega.y() + v.y() * omega.x() -
                       r.z() * (omega.y() * omega.y() + omega.x() * omega.x()) +
                       r.x() * omega.z() * omega.x() + r.y() * omega.y() * omega.z());
    sys.bias(3) = (inertia_diag.z() - inertia_diag.y()) * omega.y() * omega.z() +
                  m * (r.y() * (v.y() * omega.x() - v.x() * omega.y()) -
                       r.z() * (v.x() * omega.z() - v.z() * omega.x()));
    sys.bias(4) = (inertia_diag.x() - inertia_diag.z()) * omega.z() * omega.x() +
                  m * (r.z() * (v.z() * omega.y() - v.y() * omega.z()) -
                       r.x() * (v.y() * omega.x() - v.x() * omega.y()));
    sys.bias(5) = (inertia_diag.y() - inertia_diag.x()) * omega.x() * omega.y() +
                  m * (r.x() * (v.x() * omega.z() - v.z() * omega.x()) -
                       r.y() * (v.z() * omega.y() - v.y() * omega.z()));
    return sys;
}

namespace {

Eigen::Matrix<double, 6, 1> solve_system(const GeneralizedSystem& sys) {
    const Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(sys.mass);
    if (!lu.isInvertible()) {
        throw SingularMassError("generalized mass matrix is singular (condition number " +
                                std::to_string(sys.condition_number()) + ")");
    }
    return lu.solve(sys.applied - sys.bias);
}

struct AccelResult {
    Eigen::Matrix<double, 6, 1> accel;
    WrenchBreakdown wrench;
};

AccelResult accelerations_detailed(const BodyState& state, double t, const Scenario& scenario) {
    AccelResult out;
    out.wrench = applied_wrench(state, t, scenario);

    const Eigen::Vector3d com =
        center_of_mass(scenario.block, scenario.vehicle.mass, scenario.vehicle.geometry);
    const Eigen::Vector3d inertia =
        inertia_about_origin(scenario.block, scenario.vehicle.mass, scenario.vehicle.geometry);

    GeneralizedSystem sys =
        mass_matrix_and_bias(state, com, inertia, scenario.vehicle.mass.total_mass_kg);
    sys.applied.head<3>() = out.wrench.total_force();
    sys.applied.tail<3>() = out.wrench.total_torque();
    out.accel = solve_system(sys);
    return out;
}

} // namespace

std::pair<Eigen::Vector3d, Eigen::Vector3d> accelerations(const BodyState& state, double t,
                                                          const Scenario& scenario) {
    const AccelResult r = accelerations_detailed(state, t, scenario);
    return {r.accel.head<3>(), r.accel.tail<3>()};
}

double kinetic_energy(const BodyState& state, const Eigen::Vector3d& center_of_mass,
                      const Eigen::Vector3d& inertia_diag, double total_mass) {
    const GeneralizedSystem sys =
        mass_matrix_and_bias(state, center_of_mass, inertia_diag, total_mass);
    Eigen::Matrix<double, 6, 1> x;
    x.head<3>() = state.velocity_body;
    x.tail<3>() = state.omega_body;
    return 0.5 * x.dot(sys.mass * x);
}

StateVec12 pack_state(const BodyState& state) {
    StateVec12 x;
    x.segment<3>(0) = state.position_inertial;
    x(3) = state.attitude.roll;
    x(4) = state.attitude.pitch;
    x(5) = state.attitude.yaw;
    x.segment<3>(6) = state.velocity_body;
    x.segment<3>(9) = state.omega_body;
    return x;
}

BodyState unpack_state(const StateVec12& x) {
    BodyState state;
    state.position_inertial = x.segment<3>(0);
    state.attitude = {x(3), x(4), x(5)};
    state.velocity_body = x.segment<3>(6);
    state.omega_body = x.segment<3>(9);
    return state;
}

namespace {

StateVec12 state_derivative(const StateVec12& x, double t, const Scenario& scenario) {
    const BodyState state = unpack_state(x);
    const AccelResult accel = accelerations_detailed(state, t, scenario);

    StateVec12 dx;
    dx.segment<3>(0) = body_velocity_to_inertial(state.attitude, state.velocity_body);
    dx.segment<3>(3) = body_rates_to_euler_rates(state.attitude, state.omega_body);
    dx.segment<3>(6) = accel.accel.head<3>();
    dx.segment<3>(9) = accel.accel.tail<3>();
    return dx;
}

StateVec12 integrate_once(const StateVec12& x, double t, double dt, const Scenario& scenario) {
    const auto deriv = [&scenario](const StateVec12& y, double tau) {
        return state_derivative(y, tau, scenario);
    };
    if (scenario.integrator == IntegratorKind::Euler) {
        return euler_step(deriv, x, t, dt);
    }
    return rk4_step(deriv, x, t, dt);
}

} // namespace

BodyState step(const BodyState& state, double t, double dt, const Scenario& scenario) {
    if (!(dt > 0.0)) {
        throw ConfigError("step size must be positive", "scenario.dt_s");
    }
    const StateVec12 next = integrate_once(pack_state(state), t, dt, scenario);
    if (!next.allFinite()) {
        std::ostringstream msg;
        msg << "state became non-finite during step at t=" << t << " s; largest wrench term: "
            << dominant_term(applied_wrench(state, t, scenario));
        throw NonFiniteError(msg.str());
    }
    return unpack_state(next);
}

Trajectory simulate(const Scenario& scenario) {
    validate_scenario(scenario);

    Trajectory traj;
    traj.dt_s = scenario.dt_s;
    traj.gait = scenario.gait;
    const auto n_steps = static_cast<long>(std::llround(scenario.duration_s / scenario.dt_s));
    traj.samples.reserve(static_cast<std::size_t>(n_steps) + 1);
    if (scenario.record_diagnostics) {
        traj.diagnostics.reserve(static_cast<std::size_t>(n_steps) + 1);
    }

    BodyState state = scenario.initial_state;
    for (long k = 0; k <= n_steps; ++k) {
        const double t = static_cast<double>(k) * scenario.dt_s;
        try {
            TrajectorySample sample;
            sample.t = t;
            sample.state = state;
            sample.velocity_inertial = body_velocity_to_inertial(state.attitude,
                                                                 state.velocity_body);
            sample.euler_rates = body_rates_to_euler_rates(state.attitude, state.omega_body);
            sample.tail_angle_rad = tail_angle(t, scenario.gait);
            if (scenario.record_diagnostics) {
                traj.diagnostics.push_back(applied_wrench(state, t, scenario));
            }
            traj.samples.push_back(std::move(sample));

            if (k < n_steps) {
                state = step(state, t, scenario.dt_s, scenario);
            }
        } catch (const NumericError& err) {
            traj.abort = AbortInfo{t, err.what()};
            break;
        }
    }
    return traj;
}

} // namespace fishdyn
