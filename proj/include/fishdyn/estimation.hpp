#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "fishdyn/dynamics.hpp"
#include "fishdyn/errors.hpp"

namespace fishdyn {

/// A measured scalar series, e.g. the recorded swimming speed.
struct MeasuredSeries {
    std::vector<double> t_s;
    std::vector<double> value;
};

/// Grey-box identification of the three damping-torque coefficients: every
/// objective evaluation runs the full simulation of `scenario` with a
/// candidate damping diagonal and compares the speed trace against the
/// measurement.
struct EstimationProblem {
    MeasuredSeries measured; // speed |V_I| over time, m/s
    Scenario scenario;       // all parameters fixed except the damping diagonal
    Eigen::Vector3d lower_bound{-0.1, -0.1, -0.1}; // N*m*s/rad
    Eigen::Vector3d upper_bound{0.0, 0.0, 0.0};
    int max_evaluations{2000};
};

struct EstimationResult {
    Eigen::Vector3d damping{Eigen::Vector3d::Zero()};
    double fit_percent{0.0};
    int evaluations{0};
    bool converged{false}; // false when the evaluation budget ran out
};

/// Normalized-residual fit percentage, 100 * (1 - |y - yhat| / |y - mean(y)|).
/// 100 means identical; 0 means no better than the mean. Throws
/// DegenerateSeriesError when the measurement is constant.
double fit_percentage(std::span<const double> measured, std::span<const double> simulated);

/// Simulated speed trace of a scenario: |V_I| at every sample.
std::vector<double> simulated_speed_trace(const Trajectory& traj);

/// Linear interpolation of a measured series onto query times. Queries
/// outside the series range clamp to the end values.
std::vector<double> resample_series(const MeasuredSeries& series,
                                    std::span<const double> t_query);

/// Box-constrained Nelder-Mead over the three damping coefficients,
/// maximizing the fit percentage. Deterministic: the initial simplex sits
/// at the bound midpoints with 10%-of-box perturbations. Returns the best
/// point found with converged=false when the budget is exhausted first.
EstimationResult estimate_damping(const EstimationProblem& problem);

} // namespace fishdyn
