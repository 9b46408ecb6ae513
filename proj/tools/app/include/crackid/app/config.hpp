#pragma once

// Scenario configuration files (YAML). See docs/config.md for the grammar.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "crackid/error.hpp"
#include "crackid/sensitivity.hpp"

namespace crackid::app {

/// Validation failure located in a config document ("name:line:column: ...").
class ConfigError : public ValidationError {
 public:
  ConfigError(const std::string& source, int line, int column, const std::string& message);
  ConfigError(const std::string& source, const std::string& message);
};

struct MeshConfig {
  std::size_t nodes = 19;
  std::vector<double> node_positions;  ///< overrides `nodes` when non-empty
  double lambda_max = 0.1;
  int g_max = 10;

  Mesh build() const;
};

struct SweepConfig {
  double fixed = 0.1;
  std::vector<double> varying;
};

struct NoiseConfig {
  double epsilon = 0.0;
  std::size_t realizations = 5;
  double grid_max = 1.5e-6;
  std::size_t grid_count = 7;
};

struct ScenarioConfig {
  BoundaryCondition boundary = BoundaryCondition::PinnedPinned;
  LoadCase load;
  std::optional<CrackSet> cracks;               ///< simulation mode
  std::vector<double> positions;
  std::optional<std::vector<double>> values;    ///< data mode
  MeshConfig mesh;
  GaParams ga;
  RemeshPolicy remesh;
  NoiseConfig noise;
  std::optional<SweepConfig> sweep;
  std::size_t solve_points = 101;

  bool simulation_mode() const noexcept { return cracks.has_value(); }

  /// Measured values in data mode, the forward solution in simulation mode.
  MeasurementSet clean_measurements() const;

  /// Clean measurements plus noise.epsilon, drawn from a stream of the seed.
  MeasurementSet measurements() const;

  Scenario scenario() const;

  /// Same schema as the input, so a report's echo re-runs as a config.
  nlohmann::json to_json() const;
};

ScenarioConfig parse_config(const std::string& text, const std::string& source = "<config>");

ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace crackid::app
