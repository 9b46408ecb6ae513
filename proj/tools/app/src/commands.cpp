#include "crackid/app/commands.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "crackid/app/report.hpp"
#include "crackid/error.hpp"

namespace crackid::app {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

const CrackSet& require_truth(const ScenarioConfig& config, const std::string& command) {
  if (!config.cracks) {
    throw ValidationError(command + " needs a simulation-mode config (cracks, not measured values)");
  }
  return *config.cracks;
}

RunOptions run_options(const ScenarioConfig& config, const CommandContext& ctx,
                       const std::string& label, std::size_t total) {
  RunOptions options;
  if (config.cracks) options.reference = *config.cracks;
  options.jobs = ctx.jobs;
  options.on_event = progress_printer(ctx.progress, label, total);
  return options;
}

nlohmann::json measurements_json(const MeasurementSet& set) {
  nlohmann::json out = nlohmann::json::array();
  for (const Measurement& m : set.points()) {
    out.push_back({{"position", m.position}, {"displacement", m.displacement}});
  }
  return out;
}

nlohmann::json errors_json(const CrackSet& identified, const CrackSet& truth, double lambda_max) {
  nlohmann::json out = nlohmann::json::array();
  const auto matched = match_to_truth(identified, truth);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    nlohmann::json e = {{"real", {{"position", truth[i].position}, {"flexibility", truth[i].flexibility}}}};
    if (matched[i]) {
      const ParameterErrors pct = err_pct(*matched[i], truth[i], lambda_max);
      e["identified"] = {{"position", matched[i]->position}, {"flexibility", matched[i]->flexibility}};
      e["err_position_pct"] = pct.position;
      e["err_flexibility_pct"] = pct.flexibility;
    } else {
      e["identified"] = nullptr;
    }
    out.push_back(e);
  }
  return out;
}

void add_statistics_rows(CsvTable& table, const std::vector<CrackStatistics>& stats) {
  for (std::size_t i = 0; i < stats.size(); ++i) {
    table.add({as_int(i + 1), as_int(stats[i].samples), stats[i].position.mean,
               stats[i].position.stddev, stats[i].flexibility.mean, stats[i].flexibility.stddev});
  }
}

const std::vector<std::string> kStatisticsHeader{
    "crack", "samples", "position_mean", "position_stddev", "flexibility_mean", "flexibility_stddev"};

}  // namespace

nlohmann::json cracks_json(const CrackSet& cracks) {
  nlohmann::json out = nlohmann::json::array();
  for (const Crack& c : cracks) out.push_back({{"position", c.position}, {"flexibility", c.flexibility}});
  return out;
}

nlohmann::json statistics_json(const std::vector<CrackStatistics>& stats) {
  nlohmann::json out = nlohmann::json::array();
  for (const CrackStatistics& s : stats) {
    out.push_back({{"samples", s.samples},
                   {"position", {{"mean", s.position.mean}, {"stddev", s.position.stddev}}},
                   {"flexibility", {{"mean", s.flexibility.mean}, {"stddev", s.flexibility.stddev}}}});
  }
  return out;
}

std::vector<std::optional<Crack>> match_to_truth(const CrackSet& identified, const CrackSet& truth) {
  std::vector<std::optional<Crack>> out(truth.size());
  if (identified.empty()) return out;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (identified.size() == truth.size()) {
      out[i] = identified[i];
      continue;
    }
    const Crack* best = &identified[0];
    for (const Crack& c : identified) {
      if (std::abs(c.position - truth[i].position) < std::abs(best->position - truth[i].position)) {
        best = &c;
      }
    }
    out[i] = *best;
  }
  return out;
}

std::string chromosome_string(const Chromosome& chromosome) {
  std::string out;
  for (std::size_t k = 0; k < chromosome.size(); ++k) {
    if (chromosome[k] == 0) continue;
    if (!out.empty()) out += ' ';
    out += std::to_string(k + 1) + ":" + std::to_string(chromosome[k]);
  }
  return out;
}

std::function<void(std::size_t, const EventResult&)> progress_printer(std::ostream* out,
                                                                       std::string label,
                                                                       std::size_t total) {
  if (out == nullptr) return {};
  return [out, label = std::move(label), total](std::size_t index, const EventResult& event) {
    *out << label << " event " << index + 1;
    if (total > 0) *out << "/" << total;
    *out << " fitness " << format_number(event.best_fitness) << '\n';
    out->flush();
  };
}

nlohmann::json cmd_solve(const ScenarioConfig& config, const CommandContext& ctx) {
  const CrackSet& truth = require_truth(config, "solve");
  const BeamSolution solution(BeamProblem(config.boundary, truth, config.load));

  CsvTable grid({"xi", "u"});
  const std::size_t n = config.solve_points;
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = static_cast<double>(k) / static_cast<double>(n - 1);
    grid.add({xi, solution.deflection(xi)});
  }
  grid.write(ctx.out / "deflection.csv");

  CsvTable at({"xi", "u"});
  nlohmann::json points = nlohmann::json::array();
  for (double xi : config.positions) {
    const double u = solution.deflection(xi);
    at.add({xi, u});
    points.push_back({{"position", xi}, {"displacement", u}});
  }
  at.write(ctx.out / "measurements.csv");

  nlohmann::json jumps = nlohmann::json::array();
  for (double j : solution.rotation_jumps()) jumps.push_back(j);
  const IntegrationConstants& c = solution.constants();
  return {{"measurements", points},
          {"constants", {{"c1", c.c1}, {"c2", c.c2}, {"c3", c.c3}, {"c4", c.c4}}},
          {"rotation_jumps", jumps},
          {"grid_points", n}};
}

nlohmann::json cmd_identify(const ScenarioConfig& config, const CommandContext& ctx) {
  const Scenario scenario = config.scenario();
  const RunStatistics run =
      run_events(scenario, config.ga, run_options(config, ctx, "identify", config.ga.events));

  CsvTable events({"event", "best_fitness", "objective", "crack_count", "chromosome"});
  CsvTable identified({"event", "crack", "position", "flexibility"});
  CsvTable history({"event", "generation", "mean_fitness", "best_fitness", "diversity"});
  nlohmann::json per_event = nlohmann::json::array();
  for (std::size_t e = 0; e < run.events.size(); ++e) {
    const EventResult& ev = run.events[e];
    const double obj = objective(ev.best_chromosome, scenario);
    events.add({as_int(e + 1), ev.best_fitness, obj, as_int(run.identified[e].size()),
                chromosome_string(ev.best_chromosome)});
    for (std::size_t i = 0; i < run.identified[e].size(); ++i) {
      identified.add({as_int(e + 1), as_int(i + 1), run.identified[e][i].position,
                      run.identified[e][i].flexibility});
    }
    for (std::size_t g = 0; g < ev.mean_fitness.size(); ++g) {
      history.add({as_int(e + 1), as_int(g), ev.mean_fitness[g], ev.best_of_generation[g],
                   ev.diversity[g]});
    }
    per_event.push_back({{"event", e + 1},
                         {"best_fitness", ev.best_fitness},
                         {"objective", obj},
                         {"chromosome", chromosome_string(ev.best_chromosome)},
                         {"cracks", cracks_json(run.identified[e])}});
  }
  CsvTable stats(kStatisticsHeader);
  add_statistics_rows(stats, run.cracks);
  events.write(ctx.out / "events.csv");
  identified.write(ctx.out / "identified.csv");
  history.write(ctx.out / "history.csv");
  stats.write(ctx.out / "statistics.csv");

  nlohmann::json results;
  results["measurements"] = measurements_json(scenario.measurements());
  results["identifiable"] = scenario.identifiable();
  results["best"] = {{"event", run.best_event + 1},
                     {"fitness", run.best_fitness},
                     {"objective", objective(run.best_chromosome, scenario)},
                     {"chromosome", chromosome_string(run.best_chromosome)},
                     {"cracks", cracks_json(run.best_cracks)}};
  results["events"] = per_event;
  results["statistics"] = statistics_json(run.cracks);
  if (run.success_count) results["success_count"] = *run.success_count;
  if (config.cracks) {
    results["errors"] = errors_json(run.best_cracks, *config.cracks, config.mesh.lambda_max);
  }
  return results;
}

nlohmann::json cmd_remesh(const ScenarioConfig& config, const CommandContext& ctx) {
  const Scenario scenario = config.scenario();
  const auto iterations = iterate_identify(
      scenario, config.remesh, config.ga,
      run_options(config, ctx, "remesh", config.remesh.events_per_iteration));

  CsvTable table({"iteration", "position_step", "lambda_step", "nodes", "crack", "position",
                  "flexibility", "best_objective"});
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < iterations.size(); ++i) {
    const RemeshIteration& it = iterations[i];
    nlohmann::json estimates = nlohmann::json::array();
    for (std::size_t c = 0; c < it.estimates.size(); ++c) {
      table.add({as_int(i + 1), it.position_step, it.lambda_step, as_int(it.mesh.size()),
                 as_int(c + 1), it.estimates[c].position, it.estimates[c].flexibility,
                 it.best_objective});
      estimates.push_back({{"position", it.estimates[c].position},
                           {"flexibility", it.estimates[c].flexibility}});
    }
    if (it.estimates.empty()) {
      table.add({as_int(i + 1), it.position_step, it.lambda_step, as_int(it.mesh.size()),
                 std::int64_t{0}, kNaN, kNaN, it.best_objective});
    }
    std::vector<double> nodes(it.mesh.nodes().begin(), it.mesh.nodes().end());
    out.push_back({{"iteration", i + 1},
                   {"position_step", it.position_step},
                   {"lambda_step", it.lambda_step},
                   {"nodes", nodes},
                   {"estimates", estimates},
                   {"statistics", statistics_json(it.run.cracks)},
                   {"best_cracks", cracks_json(it.run.best_cracks)},
                   {"best_objective", it.best_objective}});
  }
  table.write(ctx.out / "iterations.csv");

  nlohmann::json results;
  results["measurements"] = measurements_json(scenario.measurements());
  results["iterations"] = out;
  if (config.cracks && !iterations.empty() && !iterations.back().estimates.empty()) {
    std::vector<Crack> final_estimates = iterations.back().estimates;
    results["errors"] = errors_json(CrackSet(final_estimates), *config.cracks, config.mesh.lambda_max);
  }
  return results;
}

nlohmann::json cmd_sweep(const ScenarioConfig& config, const CommandContext& ctx) {
  const CrackSet& truth = require_truth(config, "sweep");
  if (!config.sweep) throw ValidationError("sweep needs a 'sweep' section");
  SweepSetup setup;
  setup.bc = config.boundary;
  setup.load = config.load;
  setup.truth = truth;
  setup.mesh = config.mesh.build();
  setup.fixed_position = config.sweep->fixed;
  setup.varying_positions = config.sweep->varying;
  const auto points =
      sweep_measurement_position(setup, config.ga, run_options(config, ctx, "sweep", 0));

  CsvTable table({"fixed_position", "varying_position", "crack", "samples", "position_mean",
                  "position_stddev", "flexibility_mean", "flexibility_stddev"});
  nlohmann::json out = nlohmann::json::array();
  for (const SweepPoint& p : points) {
    for (std::size_t i = 0; i < p.stats.size(); ++i) {
      const CrackStatistics& s = p.stats[i];
      table.add({setup.fixed_position, p.varying_position, as_int(i + 1), as_int(s.samples),
                 s.position.mean, s.position.stddev, s.flexibility.mean, s.flexibility.stddev});
    }
    out.push_back({{"varying_position", p.varying_position}, {"statistics", statistics_json(p.stats)}});
  }
  table.write(ctx.out / "sweep.csv");
  return {{"fixed_position", setup.fixed_position}, {"points", out}};
}

nlohmann::json cmd_sensitivity(const ScenarioConfig& config, const CommandContext& ctx) {
  const CrackSet& truth = require_truth(config, "sensitivity");
  SensitivitySetup setup;
  setup.bc = config.boundary;
  setup.load = config.load;
  setup.truth = truth;
  setup.mesh = config.mesh.build();
  setup.positions = config.positions;
  NoiseModel noise;
  noise.realizations = config.noise.realizations;
  const auto eps = epsilon_grid(config.noise.grid_max, config.noise.grid_count);
  const auto curve = sensitivity_curve(setup, eps, noise, config.remesh, config.ga,
                                       run_options(config, ctx, "sensitivity", 0));

  CsvTable table({"epsilon", "crack", "eta_position", "eta_flexibility", "position_mean",
                  "position_stddev", "flexibility_mean", "flexibility_stddev"});
  nlohmann::json out = nlohmann::json::array();
  for (const SensitivityPoint& p : curve) {
    nlohmann::json eta = nlohmann::json::array();
    for (std::size_t i = 0; i < p.eta.size(); ++i) {
      const CrackStatistics s = i < p.identified.size() ? p.identified[i] : CrackStatistics{};
      table.add({p.epsilon, as_int(i + 1), p.eta[i].position, p.eta[i].flexibility,
                 s.position.mean, s.position.stddev, s.flexibility.mean, s.flexibility.stddev});
      eta.push_back({{"position", p.eta[i].position}, {"flexibility", p.eta[i].flexibility}});
    }
    nlohmann::json realizations = nlohmann::json::array();
    for (const CrackSet& r : p.realizations) realizations.push_back(cracks_json(r));
    out.push_back({{"epsilon", p.epsilon},
                   {"eta", eta},
                   {"statistics", statistics_json(p.identified)},
                   {"realizations", realizations}});
  }
  table.write(ctx.out / "sensitivity.csv");
  return {{"points", out}};
}

nlohmann::json run_command(const std::string& name, const ScenarioConfig& config,
                           const CommandContext& ctx) {
  using Fn = nlohmann::json (*)(const ScenarioConfig&, const CommandContext&);
  Fn fn = nullptr;
  if (name == "solve") fn = cmd_solve;
  if (name == "identify") fn = cmd_identify;
  if (name == "remesh") fn = cmd_remesh;
  if (name == "sweep") fn = cmd_sweep;
  if (name == "sensitivity") fn = cmd_sensitivity;
  if (fn == nullptr) throw ValidationError("unknown command '" + name + "'");

  std::filesystem::create_directories(ctx.out);
  const auto start = std::chrono::steady_clock::now();
  const nlohmann::json results = fn(config, ctx);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const nlohmann::json report = make_report(name, config.ga.seed, config.to_json(), results, elapsed);
  write_json(ctx.out / "report.json", report);
  write_json(ctx.out / "config.json", config.to_json());
  return report;
}

}  // namespace crackid::app
