#pragma once

// Built-in reproductions of the published tables and figures. Every bench
// writes <id>.csv with the common header
//   case,item,quantity,real,paper,computed,error,tolerance,status
// (status: pass, fail or info) and <id>.json with the report envelope.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "crackid/app/csv.hpp"

namespace crackid::app {

inline constexpr std::uint64_t kDefaultBenchSeed = 20160101;

struct BenchOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> events;  ///< per run (per iteration for remeshing benches)
  std::size_t jobs = 1;
  std::ostream* progress = nullptr;
};

struct BenchResult {
  std::string id;
  bool passed = false;
  CsvTable table;
  nlohmann::json report;
};

/// table2 .. table7, figure5, figure6, figure7, figure10.
const std::vector<std::string>& bench_ids();

/// ("table", "4") -> "table4"; also accepts "table4" alone. Throws
/// ValidationError for unknown ids.
std::string bench_id(const std::string& kind, const std::string& number = {});

BenchResult run_bench(const std::string& id, const BenchOptions& options = {});

/// Writes <id>.csv and <id>.json into `dir`.
void write_bench(const BenchResult& result, const std::filesystem::path& dir);

}  // namespace crackid::app
