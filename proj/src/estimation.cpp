#include "fishdyn/estimation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace fishdyn {

double fit_percentage(std::span<const double> measured, std::span<const double> simulated) {
    if (measured.size() != simulated.size() || measured.empty()) {
        throw DegenerateSeriesError("fit percentage needs equal-length, non-empty series");
    }
    const double mean =
        std::accumulate(measured.begin(), measured.end(), 0.0) / static_cast<double>(measured.size());

    double residual = 0.0;
    double spread = 0.0;
    for (std::size_t i = 0; i < measured.size(); ++i) {
        const double r = measured[i] - simulated[i];
        residual += r * r;
        const double s = measured[i] - mean;
        spread += s * s;
    }
    if (spread <= 0.0) {
        throw DegenerateSeriesError("measured series is constant; fit percentage is undefined");
    }
    return 100.0 * (1.0 - std::sqrt(residual / spread));
}

std::vector<double> simulated_speed_trace(const Trajectory& traj) {
    std::vector<double> speed;
    speed.reserve(traj.samples.size());
    for (const auto& sample : traj.samples) {
        speed.push_back(sample.velocity_inertial.norm());
    }
    return speed;
}

std::vector<double> resample_series(const MeasuredSeries& series,
                                    std::span<const double> t_query) {
    if (series.t_s.size() != series.value.size() || series.t_s.empty()) {
        throw DegenerateSeriesError("measured series is empty or ragged");
    }
    std::vector<double> out;
    out.reserve(t_query.size());
    for (const double t : t_query) {
        const auto upper = std::upper_bound(series.t_s.begin(), series.t_s.end(), t);
        if (upper == series.t_s.begin()) {
            out.push_back(series.value.front());
            continue;
        }
        if (upper == series.t_s.end()) {
            out.push_back(series.value.back());
            continue;
        }
        const auto hi = static_cast<std::size_t>(upper - series.t_s.begin());
        const auto lo = hi - 1;
        const double span = series.t_s[hi] - series.t_s[lo];
        const double w = span > 0.0 ? (t - series.t_s[lo]) / span : 0.0;
        out.push_back((1.0 - w) * series.value[lo] + w * series.value[hi]);
    }
    return out;
}

namespace {

using Vec3 = Eigen::Vector3d;

Vec3 project_into_box(Vec3 x, const Vec3& lower, const Vec3& upper) {
    for (int i = 0; i < 3; ++i) {
        x(i) = std::clamp(x(i), lower(i), upper(i));
    }
    return x;
}

struct Objective {
    const EstimationProblem& problem;
    std::vector<double> measured_on_grid; // resampled once; the grid is fixed
    std::vector<std::size_t> grid_indices;
    int evaluations{0};

    explicit Objective(const EstimationProblem& p) : problem(p) {
        // The comparison grid is the set of simulation sample times inside
        // the measured range; it only depends on dt and the trace, so it is
        // built once up front.
        Scenario probe = problem.scenario;
        const double t_end = problem.measured.t_s.back();
        std::vector<double> t_grid;
        const auto n_steps = static_cast<long>(std::llround(probe.duration_s / probe.dt_s));
        for (long k = 0; k <= n_steps; ++k) {
            const double t = static_cast<double>(k) * probe.dt_s;
            if (t >= problem.measured.t_s.front() && t <= t_end) {
                grid_indices.push_back(static_cast<std::size_t>(k));
                t_grid.push_back(t);
            }
        }
        if (t_grid.size() < 2) {
            throw DegenerateSeriesError("measured trace overlaps fewer than two samples");
        }
        measured_on_grid = resample_series(problem.measured, t_grid);
    }

    // Negative fit percentage (minimized). Aborted runs rank worst.
    double operator()(const Vec3& damping) {
        ++evaluations;
        Scenario candidate = problem.scenario;
        candidate.vehicle.hydro.damping_diag_nms = damping;
        candidate.record_diagnostics = false;
        const Trajectory traj = simulate(candidate);
        if (traj.abort || traj.samples.size() <= grid_indices.back()) {
            return 1e9;
        }
        std::vector<double> sim;
        sim.reserve(grid_indices.size());
        for (const std::size_t idx : grid_indices) {
            sim.push_back(traj.samples[idx].velocity_inertial.norm());
        }
        return -fit_percentage(measured_on_grid, sim);
    }
};

} // namespace

EstimationResult estimate_damping(const EstimationProblem& problem) {
    const Vec3& lower = problem.lower_bound;
    const Vec3& upper = problem.upper_bound;
    for (int i = 0; i < 3; ++i) {
        if (!(lower(i) <= upper(i)) || !std::isfinite(lower(i)) || !std::isfinite(upper(i))) {
            throw ConfigError("estimation bounds must be finite with lower <= upper", "bounds");
        }
        if (upper(i) > 0.0) {
            throw ConfigError("damping upper bounds must be <= 0", "bounds");
        }
    }
    if (problem.measured.t_s.empty() ||
        problem.measured.t_s.back() > problem.scenario.duration_s + 0.5 * problem.scenario.dt_s) {
        throw ConfigError("measured trace must be non-empty and within the scenario duration",
                          "trace");
    }
    if (problem.max_evaluations < 4) {
        throw ConfigError("evaluation budget must cover at least the initial simplex", "budget");
    }

    Objective objective(problem);
    const Vec3 width = upper - lower;

    // Nelder-Mead simplex with projection into the box.
    std::array<Vec3, 4> simplex;
    simplex[0] = project_into_box(0.5 * (lower + upper), lower, upper);
    for (int i = 0; i < 3; ++i) {
        Vec3 v = simplex[0];
        v(i) += 0.1 * width(i);
        simplex[static_cast<std::size_t>(i) + 1] = project_into_box(v, lower, upper);
    }

    std::array<double, 4> value{};
    for (std::size_t i = 0; i < 4; ++i) {
        value[i] = objective(simplex[i]);
    }

    const double reflection = 1.0, expansion = 2.0, contraction = 0.5, shrink = 0.5;
    bool converged = false;
    bool budget_left = true;

    // Evaluate within budget; reports false (and leaves `out` untouched)
    // once the evaluation budget is spent.
    const auto try_eval = [&](const Vec3& x, double& out) {
        if (objective.evaluations >= problem.max_evaluations) {
            budget_left = false;
            return false;
        }
        out = objective(x);
        return true;
    };

    while (budget_left) {
        std::array<std::size_t, 4> order{0, 1, 2, 3};
        std::sort(order.begin(), order.end(),
                  [&value](std::size_t a, std::size_t b) { return value[a] < value[b]; });
        const std::size_t best = order[0], worst = order[3], second_worst = order[2];

        // Convergence: simplex diameter small relative to the box.
        double diameter = 0.0;
        for (std::size_t i = 1; i < 4; ++i) {
            for (int d = 0; d < 3; ++d) {
                const double w = width(d) > 0.0 ? width(d) : 1.0;
                diameter = std::max(diameter,
                                    std::abs(simplex[order[i]](d) - simplex[best](d)) / w);
            }
        }
        if (diameter < 1e-6) {
            converged = true;
            break;
        }

        Vec3 centroid = Vec3::Zero();
        for (std::size_t i = 0; i < 4; ++i) {
            if (i != worst) {
                centroid += simplex[i];
            }
        }
        centroid /= 3.0;

        const Vec3 reflected =
            project_into_box(centroid + reflection * (centroid - simplex[worst]), lower, upper);
        double reflected_value = 0.0;
        if (!try_eval(reflected, reflected_value)) {
            break;
        }

        if (reflected_value < value[best]) {
            const Vec3 expanded =
                project_into_box(centroid + expansion * (reflected - centroid), lower, upper);
            double expanded_value = 0.0;
            if (try_eval(expanded, expanded_value) && expanded_value < reflected_value) {
                simplex[worst] = expanded;
                value[worst] = expanded_value;
            } else {
                simplex[worst] = reflected;
                value[worst] = reflected_value;
            }
        } else if (reflected_value < value[second_worst]) {
            simplex[worst] = reflected;
            value[worst] = reflected_value;
        } else {
            const Vec3 contracted = project_into_box(
                centroid + contraction * (simplex[worst] - centroid), lower, upper);
            double contracted_value = 0.0;
            if (!try_eval(contracted, contracted_value)) {
                break;
            }
            if (contracted_value < value[worst]) {
                simplex[worst] = contracted;
                value[worst] = contracted_value;
            } else {
                for (std::size_t i = 0; i < 4; ++i) {
                    if (i == best) {
                        continue;
                    }
                    const Vec3 shrunk = project_into_box(
                        simplex[best] + shrink * (simplex[i] - simplex[best]), lower, upper);
                    double shrunk_value = 0.0;
                    if (!try_eval(shrunk, shrunk_value)) {
                        break;
                    }
                    simplex[i] = shrunk;
                    value[i] = shrunk_value;
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < 4; ++i) {
        if (value[i] < value[best]) {
            best = i;
        }
    }
    EstimationResult result;
    result.damping = simplex[best];
    result.fit_percent = -value[best];
    result.evaluations = objective.evaluations;
    result.converged = converged;
    return result;
}

} // namespace fishdyn
