#include "fishdyn/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace fishdyn {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace

ConfigMap ConfigMap::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    ConfigMap map = parse_string(buffer.str(), path.string());
    map.directory_ = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    return map;
}

ConfigMap ConfigMap::parse_string(const std::string& text, const std::string& origin) {
    ConfigMap map;
    map.origin_ = origin;
    map.directory_ = ".";

    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) {
            line = line.substr(0, comment);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": malformed section header '" + line + "'");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || section.empty()) {
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": keys must live inside a [section]");
        }
        map.entries_[section + "." + key] = value;
    }
    return map;
}

bool ConfigMap::has(const std::string& key_path) const {
    return entries_.count(key_path) > 0;
}

std::string ConfigMap::text(const std::string& key_path) const {
    const auto it = entries_.find(key_path);
    if (it == entries_.end()) {
        throw ConfigError("missing required key", key_path);
    }
    return it->second;
}

std::string ConfigMap::text_or(const std::string& key_path, const std::string& fallback) const {
    const auto it = entries_.find(key_path);
    return it == entries_.end() ? fallback : it->second;
}

double ConfigMap::number(const std::string& key_path) const {
    const std::string raw = text(key_path);
    char* end = nullptr;
    const double value = std::strtod(raw.c_str(), &end);
    if (end == raw.c_str() || *end != '\0' || !std::isfinite(value)) {
        throw ConfigError("'" + raw + "' is not a finite number", key_path);
    }
    return value;
}

double ConfigMap::number_or(const std::string& key_path, double fallback) const {
    return has(key_path) ? number(key_path) : fallback;
}

void ConfigMap::set(const std::string& key_path, const std::string& value) {
    entries_[key_path] = value;
}

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "vehicle.m_total_kg", "vehicle.m_block_kg", "vehicle.m_buoyancy_kg",
        "vehicle.static_moment_ew_x_kgm", "vehicle.static_moment_ew_y_kgm",
        "vehicle.static_moment_ew_z_kgm", "vehicle.inertia_body_xx_kgm2",
        "vehicle.inertia_body_yy_kgm2", "vehicle.inertia_body_zz_kgm2",
        "vehicle.inertia_block_xx_kgm2", "vehicle.inertia_block_yy_kgm2",
        "vehicle.inertia_block_zz_kgm2", "vehicle.bracket_offset_x_m",
        "vehicle.bracket_offset_y_m", "vehicle.bracket_offset_z_m", "vehicle.tail_joint_x_m",
        "vehicle.tail_joint_y_m", "vehicle.tail_joint_z_m", "vehicle.motor3_offset_m",
        "vehicle.bracket_arm_m", "vehicle.rod_end_offset_m", "vehicle.slider_neutral_m",
        "vehicle.tail_cop_radius_m", "vehicle.slider_min_m", "vehicle.slider_max_m",
        "vehicle.com_neutral_x_m", "vehicle.com_neutral_y_m", "vehicle.com_neutral_z_m",
        "hydro.rho_kgm3", "hydro.tail_area_m2", "hydro.area_xx_m2", "hydro.area_yy_m2",
        "hydro.area_zz_m2", "hydro.damping_roll_nms", "hydro.damping_pitch_nms",
        "hydro.damping_yaw_nms", "hydro.coeff_table_dir", "hydro.fit_degree",
        "gait.offset_deg", "gait.amp_deg", "gait.freq_hz",
        "block.delta_d_m", "block.xi2_deg",
        "scenario.pattern", "scenario.duration_s", "scenario.dt_s", "scenario.integrator",
        "scenario.initial_x_m", "scenario.initial_y_m", "scenario.initial_z_m",
        "scenario.initial_roll_deg", "scenario.initial_pitch_deg", "scenario.initial_yaw_deg",
        "scenario.initial_vbx_ms", "scenario.initial_vby_ms", "scenario.initial_vbz_ms",
        "scenario.initial_wbx_rads", "scenario.initial_wby_rads", "scenario.initial_wbz_rads",
    };
    return keys;
}

void require_non_negative(double value, const std::string& key) {
    if (!(value >= 0.0)) {
        throw ConfigError("must be >= 0", key);
    }
}

void require_positive(double value, const std::string& key) {
    if (!(value > 0.0)) {
        throw ConfigError("must be > 0", key);
    }
}

} // namespace

const std::vector<std::string>& sweepable_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& key : known_keys()) {
            if (key != "scenario.pattern" && key != "scenario.integrator" &&
                key != "hydro.coeff_table_dir") {
                out.push_back(key);
            }
        }
        return out;
    }();
    return keys;
}

ScenarioConfig build_scenario(const ConfigMap& config) {
    for (const auto& [key, value] : config.entries()) {
        if (!known_keys().count(key)) {
            throw ConfigError("unrecognized key", key);
        }
    }

    ScenarioConfig out;
    Scenario& s = out.scenario;

    // vehicle
    MassModel& mass = s.vehicle.mass;
    mass.total_mass_kg = config.number("vehicle.m_total_kg");
    mass.block_mass_kg = config.number("vehicle.m_block_kg");
    mass.buoyancy_mass_kg = config.number("vehicle.m_buoyancy_kg");
    mass.body_static_moment_kgm = {config.number("vehicle.static_moment_ew_x_kgm"),
                                   config.number("vehicle.static_moment_ew_y_kgm"),
                                   config.number("vehicle.static_moment_ew_z_kgm")};
    mass.body_inertia_diag_kgm2 = {config.number("vehicle.inertia_body_xx_kgm2"),
                                   config.number("vehicle.inertia_body_yy_kgm2"),
                                   config.number("vehicle.inertia_body_zz_kgm2")};
    mass.block_inertia_diag_kgm2 = {config.number("vehicle.inertia_block_xx_kgm2"),
                                    config.number("vehicle.inertia_block_yy_kgm2"),
                                    config.number("vehicle.inertia_block_zz_kgm2")};

    ActuatorGeometry& geom = s.vehicle.geometry;
    geom.bracket_offset_m = {config.number("vehicle.bracket_offset_x_m"),
                             config.number("vehicle.bracket_offset_y_m"),
                             config.number("vehicle.bracket_offset_z_m")};
    geom.tail_joint_m = {config.number("vehicle.tail_joint_x_m"),
                         config.number("vehicle.tail_joint_y_m"),
                         config.number("vehicle.tail_joint_z_m")};
    geom.motor3_offset_m = config.number("vehicle.motor3_offset_m");
    geom.bracket_arm_m = config.number("vehicle.bracket_arm_m");
    geom.rod_end_offset_m = config.number("vehicle.rod_end_offset_m");
    geom.slider_neutral_m = config.number("vehicle.slider_neutral_m");
    geom.tail_cop_radius_m = config.number("vehicle.tail_cop_radius_m");
    geom.slider_min_m = config.number_or("vehicle.slider_min_m", -0.02);
    geom.slider_max_m = config.number_or("vehicle.slider_max_m", 0.02);
    require_non_negative(geom.motor3_offset_m, "vehicle.motor3_offset_m");
    require_non_negative(geom.bracket_arm_m, "vehicle.bracket_arm_m");
    require_non_negative(geom.rod_end_offset_m, "vehicle.rod_end_offset_m");
    require_non_negative(geom.slider_neutral_m, "vehicle.slider_neutral_m");
    require_non_negative(geom.tail_cop_radius_m, "vehicle.tail_cop_radius_m");
    if (geom.slider_min_m > geom.slider_max_m) {
        throw ConfigError("slider_min_m must be <= slider_max_m", "vehicle.slider_min_m");
    }

    // Declared neutral centre of mass must match what the mass model and
    // geometry produce for the neutral command.
    const Eigen::Vector3d declared_com(config.number("vehicle.com_neutral_x_m"),
                                       config.number("vehicle.com_neutral_y_m"),
                                       config.number("vehicle.com_neutral_z_m"));
    const Eigen::Vector3d neutral_com = center_of_mass(BlockCommand{}, mass, geom);
    if ((neutral_com - declared_com).lpNorm<Eigen::Infinity>() > 1e-9) {
        std::ostringstream msg;
        msg << "declared neutral centre of mass (" << declared_com.transpose()
            << ") does not match the mass model (" << neutral_com.transpose() << ")";
        throw ConfigError(msg.str(), "vehicle.com_neutral_x_m");
    }

    // hydro
    HydroParams& hydro = s.vehicle.hydro;
    hydro.rho_kgm3 = config.number("hydro.rho_kgm3");
    require_positive(hydro.rho_kgm3, "hydro.rho_kgm3");
    hydro.tail_area_m2 = config.number("hydro.tail_area_m2");
    require_positive(hydro.tail_area_m2, "hydro.tail_area_m2");
    hydro.area_diag_m2 = {config.number("hydro.area_xx_m2"), config.number("hydro.area_yy_m2"),
                          config.number("hydro.area_zz_m2")};
    require_positive(hydro.area_diag_m2.minCoeff(), "hydro.area_xx_m2");
    hydro.damping_diag_nms = {config.number("hydro.damping_roll_nms"),
                              config.number("hydro.damping_pitch_nms"),
                              config.number("hydro.damping_yaw_nms")};
    for (int i = 0; i < 3; ++i) {
        static const char* keys[] = {"hydro.damping_roll_nms", "hydro.damping_pitch_nms",
                                     "hydro.damping_yaw_nms"};
        if (hydro.damping_diag_nms(i) > 0.0) {
            throw ConfigError("damping coefficients oppose rotation and must be <= 0", keys[i]);
        }
    }

    const int degree = static_cast<int>(config.number_or("hydro.fit_degree", 4.0));
    if (degree < 1) {
        throw ConfigError("fit degree must be >= 1", "hydro.fit_degree");
    }
    const std::filesystem::path table_dir =
        config.directory() / config.text("hydro.coeff_table_dir");
    const auto models = load_coefficient_models(table_dir, degree);
    hydro.tail_drag = models[0];
    hydro.tail_lift = models[1];
    hydro.body_drag1 = models[2];
    hydro.body_lift1 = models[3];
    hydro.body_drag2 = models[4];
    hydro.body_lift2 = models[5];
    hydro.impact_pitch = models[6];
    hydro.impact_yaw = models[7];

    // gait + block command
    s.gait.offset_rad = config.number("gait.offset_deg") * kDegToRad;
    s.gait.amplitude_rad = config.number("gait.amp_deg") * kDegToRad;
    s.gait.frequency_hz = config.number("gait.freq_hz");
    s.block.slider_travel_m = config.number("block.delta_d_m");
    s.block.bracket_angle_rad = config.number("block.xi2_deg") * kDegToRad;

    // scenario
    out.pattern = pattern_from_name(config.text("scenario.pattern"));
    s.duration_s = config.number("scenario.duration_s");
    s.dt_s = config.number("scenario.dt_s");
    const std::string integrator = config.text_or("scenario.integrator", "rk4");
    if (integrator == "rk4") {
        s.integrator = IntegratorKind::Rk4;
    } else if (integrator == "euler") {
        s.integrator = IntegratorKind::Euler;
    } else {
        throw ConfigError("integrator must be 'rk4' or 'euler'", "scenario.integrator");
    }

    s.initial_state.position_inertial = {config.number_or("scenario.initial_x_m", 0.0),
                                         config.number_or("scenario.initial_y_m", 0.0),
                                         config.number_or("scenario.initial_z_m", 0.0)};
    s.initial_state.attitude = {config.number_or("scenario.initial_roll_deg", 0.0) * kDegToRad,
                                config.number_or("scenario.initial_pitch_deg", 0.0) * kDegToRad,
                                config.number_or("scenario.initial_yaw_deg", 0.0) * kDegToRad};
    s.initial_state.velocity_body = {config.number_or("scenario.initial_vbx_ms", 0.0),
                                     config.number_or("scenario.initial_vby_ms", 0.0),
                                     config.number_or("scenario.initial_vbz_ms", 0.0)};
    s.initial_state.omega_body = {config.number_or("scenario.initial_wbx_rads", 0.0),
                                  config.number_or("scenario.initial_wby_rads", 0.0),
                                  config.number_or("scenario.initial_wbz_rads", 0.0)};

    validate_scenario(s);
    return out;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
    return build_scenario(ConfigMap::parse_file(path));
}

std::vector<CoefficientSample> load_coefficient_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw MissingFamilyError("cannot open coefficient table '" + path.string() + "'");
    }
    std::vector<CoefficientSample> samples;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) {
            line = line.substr(0, comment);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        CoefficientSample sample;
        if (!(row >> sample.alpha_rad >> sample.value)) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected 'alpha_rad value'");
        }
        if (sample.alpha_rad < 0.0) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": attack angles must be >= 0");
        }
        samples.push_back(sample);
    }
    return samples;
}

std::array<CoefficientModel, kCoefficientFamilyCount>
load_coefficient_models(const std::filesystem::path& table_dir, int degree) {
    std::array<CoefficientModel, kCoefficientFamilyCount> models;
    for (std::size_t i = 0; i < kCoefficientFamilyCount; ++i) {
        const auto family = static_cast<CoefficientFamily>(i);
        const std::filesystem::path path = table_dir / (std::string(family_id(family)) + ".txt");
        if (!std::filesystem::exists(path)) {
            throw MissingFamilyError("missing coefficient table for family " +
                                     std::string(family_id(family)) + " (expected " +
                                     path.string() + ")");
        }
        const auto samples = load_coefficient_table(path);
        models[i] = fit_coefficient_model(family, samples, degree);

        if (family_is_drag(family)) {
            // Fitted drag must stay non-negative over its domain.
            const double alpha_max = models[i].alpha_max_rad();
            for (int k = 0; k <= 200; ++k) {
                const double a = alpha_max * static_cast<double>(k) / 200.0;
                if (models[i](a) < 0.0) {
                    throw ConfigError("fitted drag curve " + std::string(family_id(family)) +
                                          " goes negative at alpha=" + std::to_string(a),
                                      "hydro.coeff_table_dir");
                }
            }
        }
    }
    return models;
}

} // namespace fishdyn
