#include "fishdyn/trajectory_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fishdyn {

namespace {

// Wrap into (-pi, pi].
double wrap_angle(double a) {
    a = std::fmod(a + M_PI, 2.0 * M_PI);
    if (a <= 0.0) {
        a += 2.0 * M_PI;
    }
    return a - M_PI;
}

void append_number(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    out += buf;
}

void append_vec3(std::string& out, const Eigen::Vector3d& v) {
    for (int i = 0; i < 3; ++i) {
        out += ',';
        append_number(out, v(i));
    }
}

const char* kDiagnosticHeader =
    ",fg_x,fg_y,fg_z,fb_x,fb_y,fb_z,fl1_x,fl1_y,fl1_z,fd1_x,fd1_y,fd1_z"
    ",fl2_x,fl2_y,fl2_z,fd2_x,fd2_y,fd2_z,flt_x,flt_y,flt_z,fdt_x,fdt_y,fdt_z"
    ",mg_x,mg_y,mg_z,mw_x,mw_y,mw_z,mt_x,mt_y,mt_z,mi_x,mi_y,mi_z,mcm_x,mcm_y,mcm_z"
    ",alpha_t,alpha_b1,alpha_b2";

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) {
        out.push_back(field);
    }
    return out;
}

} // namespace

void write_trajectory(const std::filesystem::path& path, const Trajectory& traj,
                      MotionPattern pattern, bool diagnostics) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write trajectory log '" + path.string() + "'");
    }

    std::string meta = "# fishdyn trajectory\n# pattern=";
    meta += pattern_name(pattern);
    meta += " gait_offset_rad=";
    append_number(meta, traj.gait.offset_rad);
    meta += " gait_amp_rad=";
    append_number(meta, traj.gait.amplitude_rad);
    meta += " gait_freq_hz=";
    append_number(meta, traj.gait.frequency_hz);
    meta += " dt_s=";
    append_number(meta, traj.dt_s);
    meta += '\n';
    if (traj.abort) {
        meta += "# aborted_t_s=";
        append_number(meta, traj.abort->t);
        meta += " reason=";
        meta += traj.abort->reason;
        meta += '\n';
    }
    out << meta;

    out << "t,x,y,z,roll,pitch,yaw,vbx,vby,vbz,wbx,wby,wbz,xi1";
    const bool with_diag = diagnostics && traj.diagnostics.size() == traj.samples.size();
    if (with_diag) {
        out << kDiagnosticHeader;
    }
    out << '\n';

    std::string row;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const TrajectorySample& s = traj.samples[i];
        row.clear();
        append_number(row, s.t);
        append_vec3(row, s.state.position_inertial);
        row += ',';
        append_number(row, wrap_angle(s.state.attitude.roll));
        row += ',';
        append_number(row, wrap_angle(s.state.attitude.pitch));
        row += ',';
        append_number(row, s.state.attitude.yaw);
        append_vec3(row, s.state.velocity_body);
        append_vec3(row, s.state.omega_body);
        row += ',';
        append_number(row, s.tail_angle_rad);
        if (with_diag) {
            const WrenchBreakdown& w = traj.diagnostics[i];
            append_vec3(row, w.gravity);
            append_vec3(row, w.buoyancy);
            append_vec3(row, w.body_lift1);
            append_vec3(row, w.body_drag1);
            append_vec3(row, w.body_lift2);
            append_vec3(row, w.body_drag2);
            append_vec3(row, w.tail_lift);
            append_vec3(row, w.tail_drag);
            append_vec3(row, w.gravity_moment);
            append_vec3(row, w.damping_moment);
            append_vec3(row, w.tail_moment);
            append_vec3(row, w.impact_moment);
            append_vec3(row, w.com_force_moment);
            row += ',';
            append_number(row, w.tail_attack_rad);
            row += ',';
            append_number(row, w.body_attack1_rad);
            row += ',';
            append_number(row, w.body_attack2_rad);
        }
        row += '\n';
        out << row;
    }
}

LoadedTrajectory read_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open trajectory log '" + path.string() + "'");
    }

    LoadedTrajectory loaded;
    Trajectory& traj = loaded.trajectory;

    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            // Metadata: space-separated key=value pairs.
            std::istringstream meta(line.substr(1));
            std::string token;
            while (meta >> token) {
                const auto eq = token.find('=');
                if (eq == std::string::npos) {
                    continue;
                }
                const std::string key = token.substr(0, eq);
                const std::string value = token.substr(eq + 1);
                try {
                    if (key == "pattern") {
                        loaded.pattern = pattern_from_name(value);
                    } else if (key == "gait_offset_rad") {
                        traj.gait.offset_rad = std::stod(value);
                    } else if (key == "gait_amp_rad") {
                        traj.gait.amplitude_rad = std::stod(value);
                    } else if (key == "gait_freq_hz") {
                        traj.gait.frequency_hz = std::stod(value);
                    } else if (key == "dt_s") {
                        traj.dt_s = std::stod(value);
                    }
                } catch (const std::invalid_argument&) {
                    throw ConfigError(path.string() + ": malformed metadata token '" + token +
                                      "'");
                }
            }
            continue;
        }
        if (!header_seen) {
            header_seen = true; // column header
            continue;
        }

        const auto fields = split(line, ',');
        if (fields.size() < 14) {
            throw ConfigError(path.string() + ": trajectory row with fewer than 14 columns");
        }
        TrajectorySample s;
        double v[14];
        for (int i = 0; i < 14; ++i) {
            try {
                v[i] = std::stod(fields[static_cast<std::size_t>(i)]);
            } catch (const std::invalid_argument&) {
                throw ConfigError(path.string() + ": non-numeric trajectory field '" +
                                  fields[static_cast<std::size_t>(i)] + "'");
            }
        }
        s.t = v[0];
        s.state.position_inertial = {v[1], v[2], v[3]};
        s.state.attitude = {v[4], v[5], v[6]};
        s.state.velocity_body = {v[7], v[8], v[9]};
        s.state.omega_body = {v[10], v[11], v[12]};
        s.tail_angle_rad = v[13];
        s.velocity_inertial = body_velocity_to_inertial(s.state.attitude, s.state.velocity_body);
        try {
            s.euler_rates = body_rates_to_euler_rates(s.state.attitude, s.state.omega_body);
        } catch (const GimbalLockError&) {
            s.euler_rates = Eigen::Vector3d::Zero();
        }
        traj.samples.push_back(std::move(s));
    }

    if (traj.dt_s == 0.0 && traj.samples.size() >= 2) {
        traj.dt_s = traj.samples[1].t - traj.samples[0].t;
    }
    return loaded;
}

MeasuredSeries read_measured_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open trace file '" + path.string() + "'");
    }
    MeasuredSeries series;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) {
            line = line.substr(0, comment);
        }
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) {
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double t = 0.0, value = 0.0;
        if (!(row >> t >> value)) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected 't speed'");
        }
        series.t_s.push_back(t);
        series.value.push_back(value);
    }
    return series;
}

void write_measured_series(const std::filesystem::path& path, const MeasuredSeries& series) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write trace file '" + path.string() + "'");
    }
    out << "# fishdyn speed trace\nt,speed\n";
    std::string row;
    for (std::size_t i = 0; i < series.t_s.size(); ++i) {
        row.clear();
        append_number(row, series.t_s[i]);
        row += ',';
        append_number(row, series.value[i]);
        row += '\n';
        out << row;
    }
}

void write_estimation_result(const std::filesystem::path& path, const EstimationResult& result,
                             const Eigen::Vector3d& lower_bound,
                             const Eigen::Vector3d& upper_bound, int budget) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write result file '" + path.string() + "'");
    }
    std::string text = "# fishdyn damping estimation\n[result]\n";
    const char* names[] = {"c_wb1_nms", "c_wb2_nms", "c_wb3_nms"};
    for (int i = 0; i < 3; ++i) {
        text += names[i];
        text += " = ";
        append_number(text, result.damping(i));
        text += '\n';
    }
    text += "fit_percent = ";
    append_number(text, result.fit_percent);
    text += "\nevaluations = " + std::to_string(result.evaluations);
    text += "\nbudget = " + std::to_string(budget);
    text += std::string("\nconverged = ") + (result.converged ? "true" : "false");
    text += "\nlower_bound = ";
    append_number(text, lower_bound(0));
    text += ' ';
    append_number(text, lower_bound(1));
    text += ' ';
    append_number(text, lower_bound(2));
    text += "\nupper_bound = ";
    append_number(text, upper_bound(0));
    text += ' ';
    append_number(text, upper_bound(1));
    text += ' ';
    append_number(text, upper_bound(2));
    text += '\n';
    out << text;
}

std::string format_metrics(const MotionMetrics& metrics) {
    std::string text;
    text += "pattern        ";
    text += pattern_name(metrics.pattern);
    text += "\nwindow_s       ";
    append_number(text, metrics.window.t0);
    text += " .. ";
    append_number(text, metrics.window.t1);
    text += "\nspeed_ms       ";
    append_number(text, metrics.speed_ms);
    if (metrics.yaw_rate_rad_s) {
        text += "\nyaw_rate_rads  ";
        append_number(text, *metrics.yaw_rate_rad_s);
    }
    if (metrics.radius_m) {
        text += "\nradius_m       ";
        append_number(text, *metrics.radius_m);
    }
    if (metrics.climb_rate_ms) {
        text += "\nclimb_ms       ";
        append_number(text, *metrics.climb_rate_ms);
    }
    if (metrics.steady) {
        text += "\nsteady         ";
        text += *metrics.steady ? "true" : "false";
    }
    text += '\n';
    return text;
}

std::string metrics_csv_header() {
    return "label,pattern,window_t0,window_t1,speed_ms,yaw_rate_rads,radius_m,climb_ms,steady";
}

std::string metrics_csv_row(const MotionMetrics& metrics, const std::string& label) {
    std::string row = label;
    row += ',';
    row += pattern_name(metrics.pattern);
    row += ',';
    append_number(row, metrics.window.t0);
    row += ',';
    append_number(row, metrics.window.t1);
    row += ',';
    append_number(row, metrics.speed_ms);
    row += ',';
    if (metrics.yaw_rate_rad_s) {
        append_number(row, *metrics.yaw_rate_rad_s);
    }
    row += ',';
    if (metrics.radius_m) {
        append_number(row, *metrics.radius_m);
    }
    row += ',';
    if (metrics.climb_rate_ms) {
        append_number(row, *metrics.climb_rate_ms);
    }
    row += ',';
    if (metrics.steady) {
        row += *metrics.steady ? "true" : "false";
    }
    return row;
}

std::string format_sweep_report(const SweepReport& report, const std::string& parameter,
                                const std::string& metric_name) {
    std::string text = parameter + "    " + metric_name + "\n";
    for (const auto& row : report.rows) {
        append_number(text, row.parameter);
        text += "    ";
        append_number(text, row.metric);
        text += '\n';
    }
    text += "verdict: " + std::string(monotonicity_name(report.verdict)) + " (spread ";
    append_number(text, report.spread);
    text += ")\n";
    return text;
}

void write_sweep_csv(const std::filesystem::path& path, const SweepReport& report,
                     const std::string& parameter, const std::string& metric_name) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write sweep report '" + path.string() + "'");
    }
    out << parameter << ',' << metric_name << ",verdict\n";
    std::string row;
    for (const auto& r : report.rows) {
        row.clear();
        append_number(row, r.parameter);
        row += ',';
        append_number(row, r.metric);
        row += ',';
        row += monotonicity_name(report.verdict);
        row += '\n';
        out << row;
    }
}

} // namespace fishdyn
