#pragma once

// Subcommands driven by a scenario configuration. Each writes its CSV files
// and report.json into the output directory and returns the report.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "crackid/app/config.hpp"
#include "crackid/app/csv.hpp"

namespace crackid::app {

struct CommandContext {
  std::filesystem::path out = ".";
  std::size_t jobs = 1;
  std::ostream* progress = nullptr;  ///< one line per finished event
};

nlohmann::json cracks_json(const CrackSet& cracks);
nlohmann::json statistics_json(const std::vector<CrackStatistics>& stats);

/// Identified crack paired with each true crack: in order when the counts
/// agree, otherwise the identified crack nearest in position (none when the
/// identification is empty).
std::vector<std::optional<Crack>> match_to_truth(const CrackSet& identified, const CrackSet& truth);

/// Chromosome as a compact "node:gene" list of its non-zero genes.
std::string chromosome_string(const Chromosome& chromosome);

/// Progress callback printing "<label> event i/n fitness f".
std::function<void(std::size_t, const EventResult&)> progress_printer(std::ostream* out,
                                                                       std::string label,
                                                                       std::size_t total);

nlohmann::json cmd_solve(const ScenarioConfig& config, const CommandContext& ctx);
nlohmann::json cmd_identify(const ScenarioConfig& config, const CommandContext& ctx);
nlohmann::json cmd_remesh(const ScenarioConfig& config, const CommandContext& ctx);
nlohmann::json cmd_sweep(const ScenarioConfig& config, const CommandContext& ctx);
nlohmann::json cmd_sensitivity(const ScenarioConfig& config, const CommandContext& ctx);

/// Dispatches by name ("solve", "identify", ...). Throws ValidationError on
/// an unknown name.
nlohmann::json run_command(const std::string& name, const ScenarioConfig& config,
                           const CommandContext& ctx);

}  // namespace crackid::app
