#pragma once

// Versioned JSON report envelope shared by every subcommand.

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace crackid::app {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolName = "crackid";
inline constexpr const char* kToolVersion = "1.0.0";

/// {schema_version, tool, tool_version, command, seed, config, results,
/// timing: {elapsed_seconds}}.
nlohmann::json make_report(const std::string& command, std::uint64_t seed,
                           const nlohmann::json& config, const nlohmann::json& results,
                           double elapsed_seconds);

/// The report without its timing block, for bit-identical rerun checks.
nlohmann::json strip_timing(nlohmann::json report);

void write_json(const std::filesystem::path& path, const nlohmann::json& value);

nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace crackid::app
