#include "fishdyn/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace fishdyn {

namespace {

// Indices of samples with t in [window.t0, window.t1].
std::pair<std::size_t, std::size_t> window_indices(const Trajectory& traj, const Window& window) {
    if (traj.samples.empty()) {
        throw WindowTooShortError("empty trajectory");
    }
    if (!(window.t1 > window.t0)) {
        throw WindowTooShortError("window end must exceed window start");
    }
    const double eps = 0.5 * traj.dt_s;
    if (window.t0 < traj.samples.front().t - eps || window.t1 > traj.samples.back().t + eps) {
        throw WindowTooShortError("window outside trajectory time range");
    }
    std::size_t first = 0;
    while (first < traj.samples.size() && traj.samples[first].t < window.t0 - eps) {
        ++first;
    }
    std::size_t last = traj.samples.size() - 1;
    while (last > first && traj.samples[last].t > window.t1 + eps) {
        --last;
    }
    if (last <= first) {
        throw WindowTooShortError("window contains fewer than two samples");
    }
    return {first, last};
}

void require_two_gait_periods(const Trajectory& traj, const Window& window) {
    if (traj.gait.frequency_hz > 0.0) {
        const double span = window.t1 - window.t0;
        if (span < 2.0 / traj.gait.frequency_hz) {
            throw WindowTooShortError("window spans less than two gait periods");
        }
    }
}

double mean_yaw_rate(const Trajectory& traj, std::size_t first, std::size_t last) {
    const double dpsi = traj.samples[last].state.attitude.yaw -
                        traj.samples[first].state.attitude.yaw;
    const double span = traj.samples[last].t - traj.samples[first].t;
    return dpsi / span;
}

double yaw_change(const Trajectory& traj, std::size_t first, std::size_t last) {
    return traj.samples[last].state.attitude.yaw - traj.samples[first].state.attitude.yaw;
}

CircleFit fit_path_circle(const Trajectory& traj, std::size_t first, std::size_t last) {
    std::vector<double> x, y;
    x.reserve(last - first + 1);
    y.reserve(last - first + 1);
    for (std::size_t i = first; i <= last; ++i) {
        x.push_back(traj.samples[i].state.position_inertial.x());
        y.push_back(traj.samples[i].state.position_inertial.y());
    }
    return fit_circle_kasa(x, y);
}

// Windowed mean |dV_I/dt| against the run-wide peak; flags uniform motion.
bool window_is_steady(const Trajectory& traj, std::size_t first, std::size_t last) {
    const auto accel_at = [&traj](std::size_t i) {
        const std::size_t lo = i > 0 ? i - 1 : i;
        const std::size_t hi = i + 1 < traj.samples.size() ? i + 1 : i;
        const double span = traj.samples[hi].t - traj.samples[lo].t;
        if (span <= 0.0) {
            return 0.0;
        }
        return (traj.samples[hi].velocity_inertial - traj.samples[lo].velocity_inertial).norm() /
               span;
    };

    double peak = 0.0;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        peak = std::max(peak, accel_at(i));
    }
    if (peak <= 0.0) {
        return true; // never moved
    }
    double sum = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        sum += accel_at(i);
    }
    const double mean = sum / static_cast<double>(last - first + 1);
    return mean < 0.01 * peak;
}

} // namespace

const char* pattern_name(MotionPattern pattern) {
    switch (pattern) {
    case MotionPattern::Rectilinear: return "rectilinear";
    case MotionPattern::Turning: return "turning";
    case MotionPattern::Gliding: return "gliding";
    case MotionPattern::Spiral: return "spiral";
    }
    return "?";
}

MotionPattern pattern_from_name(const std::string& name) {
    if (name == "rectilinear") return MotionPattern::Rectilinear;
    if (name == "turning") return MotionPattern::Turning;
    if (name == "gliding") return MotionPattern::Gliding;
    if (name == "spiral") return MotionPattern::Spiral;
    throw ConfigError("unknown motion pattern '" + name + "'", "scenario.pattern");
}

Window default_steady_window(const Trajectory& traj) {
    const double end = traj.duration();
    double start = 0.5 * end;
    if (traj.gait.frequency_hz > 0.0) {
        start = std::max(start, 2.0 / traj.gait.frequency_hz);
    }
    if (start >= end) {
        start = 0.0; // run too short for the heuristics; use everything
    }
    return {start, end};
}

double rectilinear_speed(const Trajectory& traj, const Window& window) {
    require_two_gait_periods(traj, window);
    const auto [first, last] = window_indices(traj, window);
    double sum = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        sum += std::hypot(traj.samples[i].velocity_inertial.x(),
                          traj.samples[i].velocity_inertial.y());
    }
    return sum / static_cast<double>(last - first + 1);
}

TurningMetrics turning_metrics(const Trajectory& traj, const Window& window) {
    const auto [first, last] = window_indices(traj, window);
    if (std::abs(yaw_change(traj, first, last)) < M_PI) {
        throw NotTurningError("yaw change below half a revolution over the window");
    }
    const CircleFit circle = fit_path_circle(traj, first, last);
    return {mean_yaw_rate(traj, first, last), circle.radius, circle.rms};
}

GlidingMetrics gliding_speed(const Trajectory& traj, const Window& window) {
    require_two_gait_periods(traj, window);
    const auto [first, last] = window_indices(traj, window);
    double sum = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        sum += std::hypot(traj.samples[i].velocity_inertial.x(),
                          traj.samples[i].velocity_inertial.z());
    }
    return {sum / static_cast<double>(last - first + 1), window_is_steady(traj, first, last)};
}

SpiralMetrics spiral_metrics(const Trajectory& traj, const Window& window) {
    const auto [first, last] = window_indices(traj, window);
    if (std::abs(yaw_change(traj, first, last)) < 2.0 * M_PI) {
        throw NotTurningError("yaw change below one revolution over the window");
    }

    SpiralMetrics out;
    out.yaw_rate_rad_s = mean_yaw_rate(traj, first, last);
    const CircleFit circle = fit_path_circle(traj, first, last);
    out.radius_m = circle.radius;
    out.circle_rms_m = circle.rms;

    const auto n = static_cast<double>(last - first + 1);
    double speed_sum = 0.0;
    double climb_sum = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        speed_sum += traj.samples[i].velocity_inertial.norm();
        climb_sum += -traj.samples[i].velocity_inertial.z(); // z_I is down
    }
    out.speed_ms = speed_sum / n;
    out.climb_rate_ms = climb_sum / n;

    double var = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        const double d = -traj.samples[i].velocity_inertial.z() - out.climb_rate_ms;
        var += d * d;
    }
    out.climb_std_ms = std::sqrt(var / n);
    return out;
}

MotionMetrics extract_metrics(const Trajectory& traj, MotionPattern pattern,
                              const Window& window) {
    MotionMetrics m;
    m.pattern = pattern;
    m.window = window;
    switch (pattern) {
    case MotionPattern::Rectilinear:
        m.speed_ms = rectilinear_speed(traj, window);
        break;
    case MotionPattern::Turning: {
        const TurningMetrics t = turning_metrics(traj, window);
        m.speed_ms = rectilinear_speed(traj, window);
        m.yaw_rate_rad_s = t.yaw_rate_rad_s;
        m.radius_m = t.radius_m;
        break;
    }
    case MotionPattern::Gliding: {
        const GlidingMetrics g = gliding_speed(traj, window);
        m.speed_ms = g.speed_ms;
        m.steady = g.steady;
        break;
    }
    case MotionPattern::Spiral: {
        const SpiralMetrics s = spiral_metrics(traj, window);
        m.speed_ms = s.speed_ms;
        m.yaw_rate_rad_s = s.yaw_rate_rad_s;
        m.radius_m = s.radius_m;
        m.climb_rate_ms = s.climb_rate_ms;
        break;
    }
    }
    return m;
}

CircleFit fit_circle_kasa(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<Eigen::Index>(x.size());
    if (n < 3 || x.size() != y.size()) {
        throw DegenerateCircleError("circle fit needs at least three (x, y) points");
    }

    // Centre the data first; Kasa's linear system is ill-conditioned far
    // from the origin.
    double mx = 0.0, my = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        mx += x[static_cast<std::size_t>(i)];
        my += y[static_cast<std::size_t>(i)];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)] - mx;
        const double yi = y[static_cast<std::size_t>(i)] - my;
        design(i, 0) = 2.0 * xi;
        design(i, 1) = 2.0 * yi;
        design(i, 2) = 1.0;
        rhs(i) = xi * xi + yi * yi;
    }

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < 3) {
        throw DegenerateCircleError("path points are degenerate (collinear or coincident)");
    }
    const Eigen::Vector3d sol = qr.solve(rhs);
    const double r2 = sol(2) + sol(0) * sol(0) + sol(1) * sol(1);
    if (!(r2 > 0.0)) {
        throw DegenerateCircleError("circle fit produced a non-positive radius");
    }

    CircleFit fit;
    fit.center_x = sol(0) + mx;
    fit.center_y = sol(1) + my;
    fit.radius = std::sqrt(r2);

    double ss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double dx = x[static_cast<std::size_t>(i)] - fit.center_x;
        const double dy = y[static_cast<std::size_t>(i)] - fit.center_y;
        const double d = std::hypot(dx, dy) - fit.radius;
        ss += d * d;
    }
    fit.rms = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

const char* monotonicity_name(Monotonicity verdict) {
    switch (verdict) {
    case Monotonicity::Increasing: return "increasing";
    case Monotonicity::Decreasing: return "decreasing";
    case Monotonicity::NonMonotone: return "non-monotone";
    }
    return "?";
}

SweepReport sweep_report(std::vector<SweepRow> rows) {
    std::sort(rows.begin(), rows.end(),
              [](const SweepRow& a, const SweepRow& b) { return a.parameter < b.parameter; });

    SweepReport report;
    bool increasing = rows.size() >= 2;
    bool decreasing = rows.size() >= 2;
    double lo = rows.empty() ? 0.0 : rows.front().metric;
    double hi = lo;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        lo = std::min(lo, rows[i].metric);
        hi = std::max(hi, rows[i].metric);
        if (i > 0) {
            increasing = increasing && rows[i].metric > rows[i - 1].metric;
            decreasing = decreasing && rows[i].metric < rows[i - 1].metric;
        }
    }
    report.rows = std::move(rows);
    report.spread = hi - lo;
    report.verdict = increasing  ? Monotonicity::Increasing
                     : decreasing ? Monotonicity::Decreasing
                                  : Monotonicity::NonMonotone;
    return report;
}

} // namespace fishdyn
