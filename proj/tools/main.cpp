// fishdyn command-line tool: scenario simulation, parameter sweeps,
// coefficient fitting, damping estimation, and trajectory analysis.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fishdyn/config.hpp"
#include "fishdyn/estimation.hpp"
#include "fishdyn/trajectory_io.hpp"

namespace {

using namespace fishdyn;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitModelError = 3;
constexpr int kExitNumericError = 4;

std::vector<double> parse_number_list(const std::string& csv, const std::string& what) {
    std::vector<double> out;
    std::stringstream in(csv);
    std::string field;
    while (std::getline(in, field, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(field, &used);
            if (used != field.size()) {
                throw std::invalid_argument(field);
            }
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("'" + field + "' is not a number", what);
        }
    }
    return out;
}

Window parse_window(const std::string& spec, const Trajectory& traj) {
    if (spec.empty()) {
        return default_steady_window(traj);
    }
    const auto values = parse_number_list(spec, "--window");
    if (values.size() != 2) {
        throw ConfigError("expected 't0,t1'", "--window");
    }
    return {values[0], values[1]};
}

int run_simulate(const std::string& config_path, const std::string& out_path, bool diagnostics) {
    const ScenarioConfig config = load_scenario_config(config_path);
    const Trajectory traj = simulate(config.scenario);
    write_trajectory(out_path, traj, config.pattern, diagnostics);
    std::cout << "trajectory: " << out_path << " (" << traj.samples.size() << " samples)\n";
    if (traj.abort) {
        std::cerr << "error: run aborted at t=" << traj.abort->t << " s: " << traj.abort->reason
                  << "\n";
        return kExitNumericError;
    }
    const MotionMetrics metrics =
        extract_metrics(traj, config.pattern, default_steady_window(traj));
    std::cout << format_metrics(metrics);
    return kExitOk;
}

int run_analyze(const std::string& log_path, const std::string& pattern_override,
                const std::string& window_spec, const std::string& out_path) {
    const LoadedTrajectory loaded = read_trajectory(log_path);
    MotionPattern pattern;
    if (!pattern_override.empty()) {
        pattern = pattern_from_name(pattern_override);
    } else if (loaded.pattern) {
        pattern = *loaded.pattern;
    } else {
        throw ConfigError("log carries no pattern metadata; pass --pattern", "--pattern");
    }
    const Window window = parse_window(window_spec, loaded.trajectory);
    const MotionMetrics metrics = extract_metrics(loaded.trajectory, pattern, window);
    std::cout << format_metrics(metrics);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            throw ConfigError("cannot write metrics file '" + out_path + "'");
        }
        out << metrics_csv_header() << '\n'
            << metrics_csv_row(metrics, std::filesystem::path(log_path).stem().string()) << '\n';
    }
    return kExitOk;
}

int run_sweep(const std::string& config_path, const std::string& parameter,
              const std::string& values_csv, const std::string& out_path, unsigned workers) {
    const auto& keys = sweepable_keys();
    if (std::find(keys.begin(), keys.end(), parameter) == keys.end()) {
        throw UnknownParameterError(parameter);
    }
    const std::vector<double> values = parse_number_list(values_csv, "--values");
    if (values.size() < 2) {
        throw UnknownParameterError("--values (need at least two values to sweep)");
    }

    const ConfigMap base = ConfigMap::parse_file(config_path);

    // Build every scenario up front so config errors surface before any
    // simulation starts.
    std::vector<ScenarioConfig> configs;
    configs.reserve(values.size());
    for (const double value : values) {
        ConfigMap modified = base;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", value);
        modified.set(parameter, buf);
        configs.push_back(build_scenario(modified));
    }

    std::vector<MotionMetrics> metrics(values.size());
    std::vector<std::string> failures(values.size());
    std::atomic<std::size_t> next{0};
    const unsigned n_workers =
        std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(values.size())));

    const auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= values.size()) {
                return;
            }
            try {
                const Trajectory traj = simulate(configs[i].scenario);
                if (traj.abort) {
                    failures[i] = "aborted at t=" + std::to_string(traj.abort->t) + ": " +
                                  traj.abort->reason;
                    continue;
                }
                metrics[i] =
                    extract_metrics(traj, configs[i].pattern, default_steady_window(traj));
            } catch (const Error& err) {
                failures[i] = err.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n_workers; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& thread : pool) {
        thread.join();
    }

    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!failures[i].empty()) {
            throw ModelError("sweep value " + std::to_string(values[i]) + ": " + failures[i]);
        }
    }

    // One verdict per metric the pattern defines.
    struct MetricColumn {
        std::string name;
        std::vector<SweepRow> rows;
    };
    std::vector<MetricColumn> columns;
    columns.push_back({"speed_ms", {}});
    const MotionPattern pattern = configs.front().pattern;
    if (pattern == MotionPattern::Turning || pattern == MotionPattern::Spiral) {
        columns.push_back({"yaw_rate_rads", {}});
        columns.push_back({"radius_m", {}});
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        columns[0].rows.push_back({values[i], metrics[i].speed_ms});
        if (columns.size() > 1) {
            columns[1].rows.push_back({values[i], metrics[i].yaw_rate_rad_s.value_or(0.0)});
            columns[2].rows.push_back({values[i], metrics[i].radius_m.value_or(0.0)});
        }
    }

    std::vector<SweepReport> reports;
    reports.reserve(columns.size());
    for (auto& column : columns) {
        reports.push_back(sweep_report(column.rows));
        std::cout << format_sweep_report(reports.back(), parameter, column.name) << '\n';
    }

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            throw ConfigError("cannot write sweep report '" + out_path + "'");
        }
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << "# verdict " << columns[c].name << ": "
                << monotonicity_name(reports[c].verdict) << '\n';
        }
        out << parameter;
        for (const auto& column : columns) {
            out << ',' << column.name;
        }
        out << '\n';
        for (std::size_t i = 0; i < reports.front().rows.size(); ++i) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.12g", reports.front().rows[i].parameter);
            out << buf;
            for (const auto& report : reports) {
                std::snprintf(buf, sizeof(buf), "%.12g", report.rows[i].metric);
                out << ',' << buf;
            }
            out << '\n';
        }
    }
    return kExitOk;
}

int run_fit_coeffs(const std::string& tables_dir, int degree, const std::string& out_path) {
    const auto models = load_coefficient_models(tables_dir, degree);

    std::ofstream out(out_path);
    if (!out) {
        throw ConfigError("cannot write coefficient model file '" + out_path + "'");
    }
    out << "# fishdyn fitted coefficient models (polynomial in |alpha|, ascending powers)\n";
    out << "# family degree alpha_max_rad rms coefficients...\n";
    for (const auto& model : models) {
        char buf[32];
        out << family_id(model.family()) << ' ' << model.degree() << ' ';
        std::snprintf(buf, sizeof(buf), "%.12g", model.alpha_max_rad());
        out << buf << ' ';
        std::snprintf(buf, sizeof(buf), "%.12g", model.fit_rms());
        out << buf;
        for (const double c : model.coefficients()) {
            std::snprintf(buf, sizeof(buf), "%.17g", c);
            out << ' ' << buf;
        }
        out << '\n';
        std::cout << family_id(model.family()) << ": rms " << model.fit_rms() << '\n';
    }
    std::cout << "models: " << out_path << '\n';
    return kExitOk;
}

int run_estimate(const std::string& config_path, const std::string& trace_path,
                 const std::string& bounds_csv, int budget, const std::string& out_path) {
    EstimationProblem problem;
    problem.scenario = load_scenario_config(config_path).scenario;
    problem.measured = read_measured_series(trace_path);
    problem.max_evaluations = budget;
    if (!bounds_csv.empty()) {
        const auto bounds = parse_number_list(bounds_csv, "--bounds");
        if (bounds.size() != 6) {
            throw ConfigError("expected 'lo1,lo2,lo3,hi1,hi2,hi3'", "--bounds");
        }
        problem.lower_bound = {bounds[0], bounds[1], bounds[2]};
        problem.upper_bound = {bounds[3], bounds[4], bounds[5]};
    }

    const EstimationResult result = estimate_damping(problem);
    write_estimation_result(out_path, result, problem.lower_bound, problem.upper_bound,
                            problem.max_evaluations);
    std::cout << "damping estimate: " << result.damping.transpose() << " N*m*s/rad\n"
              << "fit: " << result.fit_percent << " % (" << result.evaluations
              << " evaluations, " << (result.converged ? "converged" : "budget exhausted")
              << ")\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"6-DOF dynamics and system identification for a tail-actuated robotic fish"};
    app.require_subcommand(1);

    std::string config_path, out_path, log_path, pattern, window_spec, parameter, values_csv;
    std::string tables_dir, trace_path, bounds_csv;
    bool diagnostics = false;
    int degree = 4;
    int budget = 2000;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());

    auto* sim = app.add_subcommand("simulate", "Run one scenario and report its metrics");
    sim->add_option("--config", config_path, "Scenario config file")->required();
    sim->add_option("--out", out_path, "Trajectory log path")->default_val("trajectory.csv");
    sim->add_flag("--diagnostics", diagnostics, "Append per-term wrench columns to the log");

    auto* ana = app.add_subcommand("analyze", "Extract metrics from an existing trajectory log");
    ana->add_option("log", log_path, "Trajectory log")->required();
    ana->add_option("--pattern", pattern, "rectilinear|turning|gliding|spiral");
    ana->add_option("--window", window_spec, "Evaluation window 't0,t1' (default: steady window)");
    ana->add_option("--out", out_path, "Write machine-readable metrics CSV");

    auto* swp = app.add_subcommand("sweep", "Simulate a list of values for one config key");
    swp->add_option("--config", config_path, "Scenario config file")->required();
    swp->add_option("--param", parameter, "Config key to vary, e.g. gait.freq_hz")->required();
    swp->add_option("--values", values_csv, "Comma-separated values")->required();
    swp->add_option("--out", out_path, "Write sweep table CSV");
    swp->add_option("--workers", workers, "Concurrent simulations");

    auto* fit = app.add_subcommand("fit-coeffs", "Fit coefficient curves from tabulated data");
    fit->add_option("--tables", tables_dir, "Directory with <family>.txt tables")->required();
    fit->add_option("--degree", degree, "Polynomial degree")->default_val(4);
    fit->add_option("--out", out_path, "Fitted model file")->default_val("coefficients.txt");

    auto* est = app.add_subcommand("estimate", "Grey-box damping estimation from a speed trace");
    est->add_option("--config", config_path, "Template scenario config")->required();
    est->add_option("--trace", trace_path, "Measured 't,speed' trace")->required();
    est->add_option("--bounds", bounds_csv, "lo1,lo2,lo3,hi1,hi2,hi3 (default -0.1..0)");
    est->add_option("--budget", budget, "Simulation budget")->default_val(2000);
    est->add_option("--out", out_path, "Result file")->default_val("estimate.txt");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            return run_simulate(config_path, out_path, diagnostics);
        }
        if (ana->parsed()) {
            return run_analyze(log_path, pattern, window_spec, out_path);
        }
        if (swp->parsed()) {
            return run_sweep(config_path, parameter, values_csv, out_path, workers);
        }
        if (fit->parsed()) {
            return run_fit_coeffs(tables_dir, degree, out_path);
        }
        if (est->parsed()) {
            return run_estimate(config_path, trace_path, bounds_csv, budget, out_path);
        }
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return kExitConfigError;
    } catch (const NumericError& err) {
        std::cerr << "numeric error: " << err.what() << '\n';
        return kExitNumericError;
    } catch (const ModelError& err) {
        std::cerr << "model error: " << err.what() << '\n';
        return kExitModelError;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitModelError;
    }
    return kExitOk;
}
