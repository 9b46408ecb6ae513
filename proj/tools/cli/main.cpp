#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crackid/app/bench.hpp"
#include "crackid/app/commands.hpp"
#include "crackid/app/config.hpp"
#include "crackid/error.hpp"

namespace {

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2, kBenchFailure = 3 };

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> events;
  std::size_t jobs = 1;
  std::string out = ".";
};

int run_scenario(const std::string& command, const Flags& flags) {
  crackid::app::ScenarioConfig cfg = crackid::app::load_config(flags.config);
  if (flags.seed) cfg.ga.seed = *flags.seed;
  if (flags.events) {
    cfg.ga.events = *flags.events;
    cfg.remesh.events_per_iteration = *flags.events;
  }
  crackid::app::CommandContext ctx;
  ctx.out = flags.out;
  ctx.jobs = flags.jobs;
  ctx.progress = &std::cerr;
  crackid::app::run_command(command, cfg, ctx);
  std::cout << command << ": wrote " << (std::filesystem::path(flags.out) / "report.json").string()
            << '\n';
  return kOk;
}

int run_benches(const std::vector<std::string>& target, const Flags& flags) {
  std::vector<std::string> ids;
  if (target.size() == 1 && target[0] == "all") {
    ids = crackid::app::bench_ids();
  } else if (target.size() == 1) {
    ids.push_back(crackid::app::bench_id(target[0]));
  } else if (target.size() == 2) {
    ids.push_back(crackid::app::bench_id(target[0], target[1]));
  } else {
    throw crackid::ValidationError("usage: crackid bench <table|figure> <id> | all");
  }
  crackid::app::BenchOptions options;
  options.seed = flags.seed;
  options.events = flags.events;
  options.jobs = flags.jobs;
  options.progress = &std::cerr;
  bool all_passed = true;
  for (const std::string& id : ids) {
    const auto result = crackid::app::run_bench(id, options);
    crackid::app::write_bench(result, flags.out);
    std::cout << id << ": " << (result.passed ? "PASS" : "FAIL") << '\n';
    all_passed = all_passed && result.passed;
  }
  return all_passed ? kOk : kBenchFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crack identification in beams from static deflections"};
  app.set_version_flag("--version", "crackid 1.0.0");
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--seed", flags.seed, "Master seed (overrides the config)");
  app.add_option("--events", flags.events, "Events per run (overrides the config)")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", flags.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", flags.out, "Output directory");

  std::string command;
  for (const char* name : {"solve", "identify", "remesh", "sweep", "sensitivity"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", flags.config, "Scenario file (YAML)")->required();
    sub->callback([&command, name] { command = name; });
  }
  app.get_subcommand("solve")->description("Deflection on a grid and at the measurement points");
  app.get_subcommand("identify")->description("GA events on the configured mesh");
  app.get_subcommand("remesh")->description("Identification with iterative mesh refinement");
  app.get_subcommand("sweep")->description("Identification while moving one measurement point");
  app.get_subcommand("sensitivity")->description("Identification errors versus measurement noise");

  std::vector<std::string> bench_target;
  auto* bench = app.add_subcommand("bench", "Reproduce a published table or figure");
  bench->add_option("target", bench_target, "table <2-7> | figure <5|6|7|10> | all")->required();
  bench->callback([&command] { command = "bench"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    if (command == "bench") return run_benches(bench_target, flags);
    return run_scenario(command, flags);
  } catch (const crackid::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const crackid::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
}
