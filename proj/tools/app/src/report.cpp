#include "crackid/app/report.hpp"

#include <fstream>
#include <stdexcept>

namespace crackid::app {

nlohmann::json make_report(const std::string& command, std::uint64_t seed,
                           const nlohmann::json& config, const nlohmann::json& results,
                           double elapsed_seconds) {
  nlohmann::json report;
  report["schema_version"] = kReportSchemaVersion;
  report["tool"] = kToolName;
  report["tool_version"] = kToolVersion;
  report["command"] = command;
  report["seed"] = seed;
  report["config"] = config;
  report["results"] = results;
  report["timing"] = {{"elapsed_seconds", elapsed_seconds}};
  return report;
}

nlohmann::json strip_timing(nlohmann::json report) {
  report.erase("timing");
  return report;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << value.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return nlohmann::json::parse(in);
}

}  // namespace crackid::app
