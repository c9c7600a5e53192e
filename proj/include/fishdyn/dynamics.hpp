#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fishdyn/actuation.hpp"
#include "fishdyn/frames.hpp"
#include "fishdyn/hydro.hpp"

namespace fishdyn {

/// Everything fixed about the vehicle: mass split, mechanism geometry,
/// fluid parameters and coefficient curves.
struct VehicleParams {
    MassModel mass;
    ActuatorGeometry geometry;
    HydroParams hydro;
};

enum class IntegratorKind { Rk4, Euler };

/// One fully-specified simulation run. Commands are held constant for the
/// whole run, matching how the swimming patterns are exercised.
struct Scenario {
    VehicleParams vehicle;
    TailGait gait;
    BlockCommand block;
    BodyState initial_state;
    double duration_s{0.0};
    double dt_s{1e-3};
    IntegratorKind integrator{IntegratorKind::Rk4};
    bool record_diagnostics{true};
};

/// Throws ConfigError when the scenario violates its invariants
/// (non-positive duration, under-resolved gait, bad gait/command ranges).
void validate_scenario(const Scenario& scenario);

/// Per-term force/torque breakdown of one wrench evaluation, body frame.
/// Forces listed first, torque-only terms after; `com_force_moment` is the
/// shift of the total force to the centre of mass.
struct WrenchBreakdown {
    Eigen::Vector3d gravity{Eigen::Vector3d::Zero()};
    Eigen::Vector3d buoyancy{Eigen::Vector3d::Zero()};
    Eigen::Vector3d body_lift1{Eigen::Vector3d::Zero()};
    Eigen::Vector3d body_drag1{Eigen::Vector3d::Zero()};
    Eigen::Vector3d body_lift2{Eigen::Vector3d::Zero()};
    Eigen::Vector3d body_drag2{Eigen::Vector3d::Zero()};
    Eigen::Vector3d tail_lift{Eigen::Vector3d::Zero()};
    Eigen::Vector3d tail_drag{Eigen::Vector3d::Zero()};
    Eigen::Vector3d gravity_moment{Eigen::Vector3d::Zero()};
    Eigen::Vector3d damping_moment{Eigen::Vector3d::Zero()};
    Eigen::Vector3d tail_moment{Eigen::Vector3d::Zero()};
    Eigen::Vector3d impact_moment{Eigen::Vector3d::Zero()};
    Eigen::Vector3d com_force_moment{Eigen::Vector3d::Zero()};
    double tail_angle_rad{0.0};
    double tail_attack_rad{0.0};
    double body_attack1_rad{0.0};
    double body_attack2_rad{0.0};

    Eigen::Vector3d total_force() const;
    Eigen::Vector3d total_torque() const;
};

/// Total applied force and torque about the body origin at (state, t),
/// with the per-term breakdown retained for diagnostics.
WrenchBreakdown applied_wrench(const BodyState& state, double t, const Scenario& scenario);

/// The six Newton-Euler equations rearranged as
///   mass * (dV_b/dt, domega_b/dt) = applied - bias.
/// `mass` couples translation and rotation through the centre-of-mass
/// offset; `bias` holds every velocity-product term.
struct GeneralizedSystem {
    Eigen::Matrix<double, 6, 6> mass{Eigen::Matrix<double, 6, 6>::Zero()};
    Eigen::Matrix<double, 6, 1> bias{Eigen::Matrix<double, 6, 1>::Zero()};
    Eigen::Matrix<double, 6, 1> applied{Eigen::Matrix<double, 6, 1>::Zero()};

    /// 2-norm condition number of the mass matrix.
    double condition_number() const;
};

GeneralizedSystem mass_matrix_and_bias(const BodyState& state,
                                       const Eigen::Vector3d& center_of_mass,
                                       const Eigen::Vector3d& inertia_diag, double total_mass);

/// Body-frame accelerations (dV_b/dt, domega_b/dt) from the 6x6 solve.
/// Throws SingularMassError if the system cannot be solved.
std::pair<Eigen::Vector3d, Eigen::Vector3d> accelerations(const BodyState& state, double t,
                                                          const Scenario& scenario);

/// Kinetic energy consistent with the generalized mass matrix:
/// 0.5 * (V_b, omega_b)^T * M * (V_b, omega_b).
double kinetic_energy(const BodyState& state, const Eigen::Vector3d& center_of_mass,
                      const Eigen::Vector3d& inertia_diag, double total_mass);

/// One explicit integrator step of the 12-state ODE (position, attitude,
/// body velocities). Throws GimbalLockError / NonFiniteError on breakdown.
BodyState step(const BodyState& state, double t, double dt, const Scenario& scenario);

struct TrajectorySample {
    double t{0.0};
    BodyState state;
    Eigen::Vector3d velocity_inertial{Eigen::Vector3d::Zero()};
    Eigen::Vector3d euler_rates{Eigen::Vector3d::Zero()};
    double tail_angle_rad{0.0};
};

/// Reason a run stopped early, with the last integrated time.
struct AbortInfo {
    double t{0.0};
    std::string reason;
};

/// Uniformly sampled run output. `diagnostics` parallels `samples` when
/// the scenario recorded them. Yaw is logged unwrapped; metric extraction
/// relies on that.
struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<WrenchBreakdown> diagnostics;
    double dt_s{0.0};
    TailGait gait;
    std::optional<AbortInfo> abort;

    double duration() const { return samples.empty() ? 0.0 : samples.back().t; }
};

/// Integrate a scenario. Deterministic for a given scenario. On gimbal
/// lock or a non-finite state the partial trajectory is returned with
/// `abort` set instead of throwing.
Trajectory simulate(const Scenario& scenario);

// --- generic fixed-step integrators -------------------------------------

using StateVec12 = Eigen::Matrix<double, 12, 1>;

template <typename Deriv>
StateVec12 rk4_step(Deriv&& deriv, const StateVec12& x, double t, double dt) {
    const StateVec12 k1 = deriv(x, t);
    const StateVec12 k2 = deriv(StateVec12(x + 0.5 * dt * k1), t + 0.5 * dt);
    const StateVec12 k3 = deriv(StateVec12(x + 0.5 * dt * k2), t + 0.5 * dt);
    const StateVec12 k4 = deriv(StateVec12(x + dt * k3), t + dt);
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <typename Deriv>
StateVec12 euler_step(Deriv&& deriv, const StateVec12& x, double t, double dt) {
    return x + dt * deriv(x, t);
}

StateVec12 pack_state(const BodyState& state);
BodyState unpack_state(const StateVec12& x);

} // namespace fishdyn
