#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace liesys {

/// One `key = value` entry of a scenario file.
struct ConfigValue {
  std::string text;
  int line = 0;
};

/// Flat sectioned text: `[section]` headers, `key = value` lines, `#` comments.
/// Sections: scenario, controls, tolerances, output, wavefunction.
struct ScenarioConfig {
  std::string source;
  std::map<std::string, std::map<std::string, ConfigValue>> sections;

  bool has(const std::string& section, const std::string& key) const;
  const ConfigValue* find(const std::string& section, const std::string& key) const;
};

ScenarioConfig parse_scenario(std::istream& in, const std::string& source = "<config>");
ScenarioConfig load_scenario(const std::string& path);

/// Command-line settings that take precedence over the file.
struct RunOverrides {
  std::optional<double> tol;
  std::optional<double> fixed_step;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
};

struct RunResult {
  nlohmann::ordered_json report;
  /// All verification thresholds met.
  bool ok = false;
  std::vector<std::string> files;
};

/// Executes the requested tasks and writes trajectories plus
/// `<prefix>_report.json`. Configuration errors throw; threshold
/// violations are reported through `ok`.
RunResult run_scenario(const ScenarioConfig& config, const RunOverrides& overrides = {});

/// Model catalog for `list-models`.
std::string list_models();

/// Default verification thresholds.
inline constexpr double kDefaultCompareThreshold = 1e-6;
inline constexpr double kDefaultResidualThreshold = 1e-6;
inline constexpr double kDefaultDriftThreshold = 1e-8;
inline constexpr double kDefaultNormThreshold = 1e-6;

}  // namespace liesys
