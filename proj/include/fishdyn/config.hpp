#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fishdyn/analysis.hpp"
#include "fishdyn/dynamics.hpp"

namespace fishdyn {

/// Flat view of an INI-style config: "[section]" headers and "key = value"
/// lines, '#' comments. Keys are addressed as "section.key".
class ConfigMap {
public:
    static ConfigMap parse_file(const std::filesystem::path& path);
    static ConfigMap parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key_path) const;
    double number(const std::string& key_path) const;
    double number_or(const std::string& key_path, double fallback) const;
    std::string text(const std::string& key_path) const;
    std::string text_or(const std::string& key_path, const std::string& fallback) const;

    /// Override or insert a value (used by parameter sweeps).
    void set(const std::string& key_path, const std::string& value);

    const std::filesystem::path& directory() const { return directory_; }
    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
    std::filesystem::path directory_; // for resolving relative paths
    std::string origin_;
};

/// A scenario plus the motion-pattern tag it carries in the config.
struct ScenarioConfig {
    Scenario scenario;
    MotionPattern pattern{MotionPattern::Rectilinear};
};

/// Build and validate a full scenario from a parsed config. Angles are
/// given in degrees in the file and converted here; everything downstream
/// is radians. Throws ConfigError naming the offending key.
ScenarioConfig build_scenario(const ConfigMap& config);

ScenarioConfig load_scenario_config(const std::filesystem::path& path);

/// The set of sweepable numeric keys (config key paths).
const std::vector<std::string>& sweepable_keys();

// --- coefficient tables ----------------------------------------------------

/// Read one "alpha_rad value" table. The header comment carries the family
/// id; it must match the filename-derived family.
std::vector<CoefficientSample> load_coefficient_table(const std::filesystem::path& path);

/// Load and fit all eight families from a directory of <family>.txt files.
/// Throws MissingFamilyError for absent files.
std::array<CoefficientModel, kCoefficientFamilyCount>
load_coefficient_models(const std::filesystem::path& table_dir, int degree);

} // namespace fishdyn
