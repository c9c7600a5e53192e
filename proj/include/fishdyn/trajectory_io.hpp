#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "fishdyn/analysis.hpp"
#include "fishdyn/dynamics.hpp"
#include "fishdyn/estimation.hpp"

namespace fishdyn {

/// Write a trajectory log: '#' metadata lines, one CSV header line, one row
/// per sample. Roll/pitch are wrapped to (-pi, pi] on output; yaw is left
/// unwrapped for metric extraction. With `diagnostics` the per-term wrench
/// breakdown is appended column-wise.
void write_trajectory(const std::filesystem::path& path, const Trajectory& traj,
                      MotionPattern pattern, bool diagnostics = false);

/// Parsed log plus the pattern tag recovered from the metadata, if any.
struct LoadedTrajectory {
    Trajectory trajectory;
    std::optional<MotionPattern> pattern;
};

LoadedTrajectory read_trajectory(const std::filesystem::path& path);

/// "t,speed" measured-trace files ('#' comments allowed).
MeasuredSeries read_measured_series(const std::filesystem::path& path);
void write_measured_series(const std::filesystem::path& path, const MeasuredSeries& series);

void write_estimation_result(const std::filesystem::path& path, const EstimationResult& result,
                             const Eigen::Vector3d& lower_bound,
                             const Eigen::Vector3d& upper_bound, int budget);

/// Human-readable metrics block.
std::string format_metrics(const MotionMetrics& metrics);

/// Machine-readable metrics record (CSV line with fixed columns), plus the
/// matching header.
std::string metrics_csv_header();
std::string metrics_csv_row(const MotionMetrics& metrics, const std::string& label);

/// Sweep report: human table and CSV (one record per scenario).
std::string format_sweep_report(const SweepReport& report, const std::string& parameter,
                                const std::string& metric_name);
void write_sweep_csv(const std::filesystem::path& path, const SweepReport& report,
                     const std::string& parameter, const std::string& metric_name);

} // namespace fishdyn
