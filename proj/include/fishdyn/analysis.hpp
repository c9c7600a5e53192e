#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fishdyn/dynamics.hpp"
#include "fishdyn/errors.hpp"

namespace fishdyn {

enum class MotionPattern { Rectilinear, Turning, Gliding, Spiral };

const char* pattern_name(MotionPattern pattern);
MotionPattern pattern_from_name(const std::string& name);

/// Half-open evaluation window [t0, t1] inside a trajectory.
struct Window {
    double t0{0.0};
    double t1{0.0};
};

/// Default steady window: the last half of the run, but never overlapping
/// the first two gait periods.
Window default_steady_window(const Trajectory& traj);

/// Mean horizontal resultant speed sqrt(V_Ix^2 + V_Iy^2) over the window.
/// Throws WindowTooShortError when the window spans less than two gait
/// periods (for a running gait).
double rectilinear_speed(const Trajectory& traj, const Window& window);

struct TurningMetrics {
    double yaw_rate_rad_s{0.0};
    double radius_m{0.0};
    double circle_rms_m{0.0}; // geometric residual of the circle fit
};

/// Mean yaw rate and least-squares turning circle over the window.
/// Requires at least half a revolution of yaw change; throws
/// NotTurningError otherwise, DegenerateCircleError for collinear paths.
TurningMetrics turning_metrics(const Trajectory& traj, const Window& window);

struct GlidingMetrics {
    double speed_ms{0.0};
    bool steady{false}; // reached uniform motion vs still accelerating
};

/// Mean resultant of the inertial x and z velocities over the window,
/// flagged steady when the windowed acceleration has decayed.
GlidingMetrics gliding_speed(const Trajectory& traj, const Window& window);

struct SpiralMetrics {
    double yaw_rate_rad_s{0.0};
    double speed_ms{0.0};      // mean |V_I|
    double radius_m{0.0};
    double climb_rate_ms{0.0}; // positive upward (z_I points down)
    double climb_std_ms{0.0};
    double circle_rms_m{0.0};
};

/// Helix metrics; requires a full revolution of yaw change in the window.
SpiralMetrics spiral_metrics(const Trajectory& traj, const Window& window);

/// Pattern-tagged summary used by the CLI report.
struct MotionMetrics {
    MotionPattern pattern{MotionPattern::Rectilinear};
    Window window;
    double speed_ms{0.0};
    std::optional<double> yaw_rate_rad_s;
    std::optional<double> radius_m;
    std::optional<double> climb_rate_ms;
    std::optional<bool> steady;
};

MotionMetrics extract_metrics(const Trajectory& traj, MotionPattern pattern,
                              const Window& window);

// --- circle fitting ------------------------------------------------------

struct CircleFit {
    double center_x{0.0};
    double center_y{0.0};
    double radius{0.0};
    double rms{0.0};
};

/// Algebraic least-squares (Kasa) circle fit. Throws DegenerateCircleError
/// for fewer than three points or a near-collinear set.
CircleFit fit_circle_kasa(std::span<const double> x, std::span<const double> y);

// --- parameter sweeps ----------------------------------------------------

enum class Monotonicity { Increasing, Decreasing, NonMonotone };

const char* monotonicity_name(Monotonicity verdict);

struct SweepRow {
    double parameter{0.0};
    double metric{0.0};
};

struct SweepReport {
    std::vector<SweepRow> rows; // sorted by parameter
    Monotonicity verdict{Monotonicity::NonMonotone};
    double spread{0.0}; // max - min of the metric
};

/// Order rows by parameter and classify the metric trend. Strictness is
/// exact: any tie or reversal yields NonMonotone.
SweepReport sweep_report(std::vector<SweepRow> rows);

} // namespace fishdyn
