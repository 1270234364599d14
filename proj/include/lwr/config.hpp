#ifndef LWR_CONFIG_HPP
#define LWR_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lwr/walk.hpp"

namespace lwr {

/// Full run description: model, optional scaling regime, ensemble shape,
/// seeding and output. Output is a pure function of this structure.
struct RunConfig {
  int schema_version = 1;
  WalkParams model;
  WalkKind kind;
  std::optional<ScalingSpec> scaling;
  std::size_t ensemble_size = 1;
  std::vector<double> time_grid;
  std::uint64_t seed = 0;
  std::string output_path;
  unsigned threads = 0;  // 0 = auto
  double epsilon = 1e-4;
  std::vector<double> ladder;  // converge subcommand only
};

/// Throws std::invalid_argument naming the offending field.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);
nlohmann::json config_to_json(const RunConfig& config);

/// Cross-field checks shared by all subcommands (scaling/coupling
/// consistency per the coupling case table, grid monotonicity, epsilon
/// range, ladder shape).
void validate_config(const RunConfig& config);

}  // namespace lwr

#endif
