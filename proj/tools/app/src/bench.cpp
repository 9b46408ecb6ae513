#include "crackid/app/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "crackid/app/commands.hpp"
#include "crackid/app/config.hpp"
#include "crackid/app/report.hpp"
#include "crackid/error.hpp"

namespace crackid::app {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kExact = 1e-9;

const std::vector<std::string> kHeader{"case",     "item",  "quantity",  "real",  "paper",
                                       "computed", "error", "tolerance", "status"};

class Sheet {
 public:
  CsvTable csv{kHeader};
  nlohmann::json rows = nlohmann::json::array();
  bool passed = true;

  void check(const std::string& c, const std::string& item, const std::string& quantity,
             double real, double paper, double computed, double error, double tolerance) {
    const bool ok = !std::isnan(error) && error <= tolerance;
    passed = passed && ok;
    add(c, item, quantity, real, paper, computed, error, tolerance, ok ? "pass" : "fail");
  }

  void info(const std::string& c, const std::string& item, const std::string& quantity,
            double real, double paper, double computed, double error = kNaN) {
    add(c, item, quantity, real, paper, computed, error, kNaN, "info");
  }

  /// A row that passes when `ok`, with no natural error/tolerance pair.
  void flag(const std::string& c, const std::string& item, const std::string& quantity,
            double real, double paper, double computed, double tolerance, bool ok) {
    passed = passed && ok;
    add(c, item, quantity, real, paper, computed, kNaN, tolerance, ok ? "pass" : "fail");
  }

 private:
  void add(const std::string& c, const std::string& item, const std::string& quantity, double real,
           double paper, double computed, double error, double tolerance, const char* status) {
    csv.add({c, item, quantity, real, paper, computed, error, tolerance, std::string(status)});
    auto num = [](double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
    rows.push_back({{"case", c},
                    {"item", item},
                    {"quantity", quantity},
                    {"real", num(real)},
                    {"paper", num(paper)},
                    {"computed", num(computed)},
                    {"error", num(error)},
                    {"tolerance", num(tolerance)},
                    {"status", status}});
  }
};

struct Context {
  const BenchOptions& options;
  std::string id;
  nlohmann::json configs = nlohmann::json::array();
  nlohmann::json details = nlohmann::json::object();

  std::uint64_t seed() const { return options.seed.value_or(kDefaultBenchSeed); }

  ScenarioConfig config(BoundaryCondition bc, LoadCase load, std::vector<double> positions,
                        std::size_t default_events, std::size_t nodes = 99) const {
    ScenarioConfig cfg;
    cfg.boundary = bc;
    cfg.load = std::move(load);
    cfg.positions = std::move(positions);
    cfg.mesh.nodes = nodes;
    cfg.ga.seed = seed();
    cfg.ga.events = options.events.value_or(default_events);
    cfg.remesh.events_per_iteration = options.events.value_or(cfg.remesh.events_per_iteration);
    return cfg;
  }

  void record(const std::string& name, const ScenarioConfig& cfg) {
    configs.push_back({{"case", name}, {"config", cfg.to_json()}});
  }

  RunOptions run_options(const std::string& label, std::size_t total,
                         std::optional<CrackSet> reference) const {
    RunOptions o;
    o.reference = std::move(reference);
    o.jobs = options.jobs;
    o.on_event = progress_printer(options.progress, id + " " + label, total);
    return o;
  }

  RunStatistics identify(const std::string& name, const ScenarioConfig& cfg,
                         std::optional<CrackSet> reference = std::nullopt) {
    record(name, cfg);
    if (!reference && cfg.cracks) reference = *cfg.cracks;
    const Scenario scenario = cfg.scenario();
    RunStatistics run = run_events(scenario, cfg.ga, run_options(name, cfg.ga.events, reference));
    nlohmann::json d;
    d["best_cracks"] = cracks_json(run.best_cracks);
    d["best_fitness"] = run.best_fitness;
    d["best_event"] = run.best_event + 1;
    d["best_chromosome"] = chromosome_string(run.best_chromosome);
    d["statistics"] = statistics_json(run.cracks);
    if (run.success_count) d["success_count"] = *run.success_count;
    nlohmann::json per_event = nlohmann::json::array();
    for (const CrackSet& c : run.identified) per_event.push_back(cracks_json(c));
    d["events"] = per_event;
    details[name] = d;
    return run;
  }
};

std::vector<double> uniform_positions(std::size_t m) {
  std::vector<double> out;
  for (std::size_t j = 1; j <= m; ++j) out.push_back(static_cast<double>(j) / static_cast<double>(m + 1));
  return out;
}

CrackSet equal_cracks(std::vector<double> positions, double lambda) {
  std::vector<Crack> cracks;
  for (double x : positions) cracks.push_back({x, lambda});
  return CrackSet(std::move(cracks));
}

std::string crack_label(std::size_t i) { return "crack " + std::to_string(i + 1); }

/// Count row plus position/intensity rows of the best identification against
/// the truth with per-crack tolerances.
void compare_best(Sheet& sheet, const std::string& name, const CrackSet& best, const CrackSet& truth,
                  const std::vector<Crack>& paper, const std::vector<double>& position_tol,
                  const std::vector<double>& flexibility_tol) {
  sheet.flag(name, "cracks", "count", static_cast<double>(truth.size()),
             static_cast<double>(paper.size()), static_cast<double>(best.size()), 0.0,
             best.size() == truth.size());
  const auto matched = match_to_truth(best, truth);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double px = i < paper.size() ? paper[i].position : kNaN;
    const double pl = i < paper.size() ? paper[i].flexibility : kNaN;
    const double cx = matched[i] ? matched[i]->position : kNaN;
    const double cl = matched[i] ? matched[i]->flexibility : kNaN;
    sheet.check(name, crack_label(i), "xi", truth[i].position, px, cx,
                std::abs(cx - truth[i].position), position_tol[i]);
    sheet.check(name, crack_label(i), "lambda", truth[i].flexibility, pl, cl,
                std::abs(cl - truth[i].flexibility), flexibility_tol[i]);
  }
}

void bench_table2(Context& ctx, Sheet& sheet) {
  struct Case {
    double load_at;
    std::vector<double> values;
    double mean_xi, sd_xi, mean_l, sd_l;
    bool graded;
  };
  const std::vector<Case> cases{
      {0.5, {0.000328167, 0.001179983, 0.0007495}, 0.358, 0.173, 0.048, 0.0204, false},
      {0.25, {0.000319667, 0.000813833, 0.000304667}, 0.4266, 0.153, 0.0299, 0.026, true},
  };
  const Crack truth{0.425, 0.03};
  for (const Case& c : cases) {
    ScenarioConfig cfg = ctx.config(BoundaryCondition::ClampedClamped,
                                    LoadCase(0.0, {{0.2857, c.load_at}}), {0.15, 0.35, 0.75}, 10);
    cfg.values = c.values;
    const std::string name = "load at " + format_number(c.load_at);
    const RunStatistics run = ctx.identify(name, cfg, CrackSet({truth}));
    const CrackStatistics s = run.cracks.empty() ? CrackStatistics{} : run.cracks[0];
    const bool have = s.samples > 0;
    const double mx = have ? s.position.mean : kNaN;
    const double ml = have ? s.flexibility.mean : kNaN;
    if (c.graded) {
      sheet.check(name, "crack 1", "mean_xi", truth.position, c.mean_xi, mx,
                  std::abs(mx - truth.position), 0.16);
      sheet.check(name, "crack 1", "mean_lambda", truth.flexibility, c.mean_l, ml,
                  std::abs(ml - truth.flexibility), 0.03);
    } else {
      sheet.info(name, "crack 1", "mean_xi", truth.position, c.mean_xi, mx, std::abs(mx - truth.position));
      sheet.info(name, "crack 1", "mean_lambda", truth.flexibility, c.mean_l, ml,
                 std::abs(ml - truth.flexibility));
    }
    sheet.info(name, "crack 1", "stddev_xi", kNaN, c.sd_xi, have ? s.position.stddev : kNaN);
    sheet.info(name, "crack 1", "stddev_lambda", kNaN, c.sd_l, have ? s.flexibility.stddev : kNaN);
    sheet.info(name, "crack 1", "samples", kNaN, 10.0, static_cast<double>(s.samples));
  }
}

void bench_table3(Context& ctx, Sheet& sheet) {
  ScenarioConfig cfg = ctx.config(BoundaryCondition::Cantilever, LoadCase(50.0),
                                  {0.25, 0.35, 0.65, 0.95}, 100);
  cfg.cracks = CrackSet({{0.2, 0.02}, {0.4, 0.04}});
  const RunStatistics run = ctx.identify("cantilever", cfg);
  compare_best(sheet, "cantilever", run.best_cracks, *cfg.cracks, {{0.2, 0.02}, {0.4, 0.04}},
               {kExact, kExact}, {kExact, kExact});
}

void bench_table4(Context& ctx, Sheet& sheet) {
  const std::map<std::size_t, std::vector<double>> truths{
      {1, {0.5}},
      {2, {0.33, 0.67}},
      {3, {0.25, 0.5, 0.75}},
      {4, {0.2, 0.4, 0.6, 0.8}},
      {5, {0.17, 0.33, 0.5, 0.67, 0.83}},
  };
  const std::map<std::size_t, std::vector<Crack>> paper{
      {1, {{0.5, 0.05}}},
      {2, {{0.33, 0.05}, {0.67, 0.05}}},
      {3, {{0.21, 0.05}, {0.5, 0.06}, {0.77, 0.05}}},
      {4, {{0.17, 0.05}, {0.41, 0.05}, {0.61, 0.06}}},
      {5, {{0.19, 0.05}, {0.39, 0.06}, {0.54, 0.05}, {0.70, 0.06}, {0.86, 0.03}}},
  };
  const double lambda_max = 0.1;
  for (const auto& [n, xs] : truths) {
    ScenarioConfig cfg = ctx.config(BoundaryCondition::PinnedPinned, LoadCase(50.0), placement(n), 100);
    cfg.cracks = equal_cracks(xs, 0.05);
    const std::string name = "n=" + std::to_string(n);
    const RunStatistics run = ctx.identify(name, cfg);
    const CrackSet& truth = *cfg.cracks;
    const auto& printed = paper.at(n);
    sheet.flag(name, "cracks", "count", static_cast<double>(n), kNaN,
               static_cast<double>(run.best_cracks.size()), 0.0, run.best_cracks.size() == n);
    const auto matched = match_to_truth(run.best_cracks, truth);
    const double tol_x = n <= 2 ? kExact : 5.0;
    const double tol_l = n <= 2 ? kExact : 20.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const bool printed_column = i < printed.size();
      const ParameterErrors paper_err =
          printed_column ? err_pct(printed[i], truth[i], lambda_max) : ParameterErrors{kNaN, kNaN};
      const ParameterErrors err = matched[i] ? err_pct(*matched[i], truth[i], lambda_max)
                                             : ParameterErrors{kNaN, kNaN};
      const double cx = matched[i] ? matched[i]->position : kNaN;
      const double cl = matched[i] ? matched[i]->flexibility : kNaN;
      if (printed_column) {
        sheet.check(name, crack_label(i), "Err_xi", truth[i].position, paper_err.position, cx,
                    err.position, tol_x);
        sheet.check(name, crack_label(i), "Err_lambda", truth[i].flexibility, paper_err.flexibility,
                    cl, err.flexibility, tol_l);
      } else {
        sheet.info(name, crack_label(i), "Err_xi", truth[i].position, kNaN, cx, err.position);
        sheet.info(name, crack_label(i), "Err_lambda", truth[i].flexibility, kNaN, cl, err.flexibility);
      }
    }
  }
}

void bench_table5(Context& ctx, Sheet& sheet) {
  struct Case {
    std::size_t nc;
    Crack crack;
  };
  for (const Case& c : {Case{2, {0.8, 0.08}}, Case{3, {0.71, 0.03}}}) {
    ScenarioConfig cfg =
        ctx.config(BoundaryCondition::PinnedPinned, LoadCase(50.0), uniform_positions(2 * c.nc), 100);
    cfg.cracks = CrackSet({c.crack});
    const std::string name = "n_c=" + std::to_string(c.nc);
    const RunStatistics run = ctx.identify(name, cfg);
    compare_best(sheet, name, run.best_cracks, *cfg.cracks, {c.crack}, {kExact}, {kExact});
  }
}

void bench_table6(Context& ctx, Sheet& sheet) {
  struct Case {
    std::size_t nc;
    std::vector<Crack> truth;
    std::vector<Crack> paper;
  };
  const double one_node = 0.01 + kExact;
  const std::vector<Case> cases{
      {3, {{0.35, 0.05}, {0.8, 0.05}}, {{0.35, 0.05}, {0.79, 0.05}}},
      {4, {{0.25, 0.05}, {0.5, 0.05}}, {{0.25, 0.05}, {0.49, 0.05}}},
  };
  for (const Case& c : cases) {
    ScenarioConfig cfg =
        ctx.config(BoundaryCondition::PinnedPinned, LoadCase(50.0), uniform_positions(2 * c.nc), 100);
    cfg.cracks = CrackSet(c.truth);
    const std::string name = "n_c=" + std::to_string(c.nc);
    const RunStatistics run = ctx.identify(name, cfg);
    compare_best(sheet, name, run.best_cracks, *cfg.cracks, c.paper, {kExact, one_node},
                 {kExact, kExact});
  }
}

void bench_table7(Context& ctx, Sheet& sheet) {
  ScenarioConfig cfg = ctx.config(BoundaryCondition::ClampedClamped, LoadCase(0.0, {{1.0, 0.4}}),
                                  uniform_positions(8), 100);
  cfg.cracks = equal_cracks({0.25, 0.5, 0.75}, 0.05);
  const RunStatistics run = ctx.identify("clamped-clamped", cfg);
  const double pos_tol = 0.02 + kExact;
  const double lam_tol = 2 * 0.01 + kExact;
  compare_best(sheet, "clamped-clamped", run.best_cracks, *cfg.cracks,
               {{0.26, 0.03}, {0.5, 0.05}, {0.76, 0.04}}, {pos_tol, pos_tol, pos_tol},
               {lam_tol, lam_tol, lam_tol});
}

void bench_figure5(Context& ctx, Sheet& sheet) {
  struct Case {
    std::string name;
    double crack;
    double fixed;
  };
  const std::vector<Case> cases{{"case 1", 0.33, 0.1}, {"case 2", 0.73, 0.9}};
  for (const Case& c : cases) {
    SweepSetup setup;
    setup.load = LoadCase(50.0);
    setup.truth = CrackSet({{c.crack, 0.07}});
    setup.mesh = Mesh::uniform(99, 0.1, 10);
    setup.fixed_position = c.fixed;
    for (int k = 1; k <= 9; ++k) {
      const double x = k / 10.0;
      if (x != c.fixed) setup.varying_positions.push_back(x);
    }
    ScenarioConfig cfg = ctx.config(BoundaryCondition::PinnedPinned, setup.load,
                                    {std::min(c.fixed, 0.5), std::max(c.fixed, 0.5)}, 10);
    cfg.cracks = setup.truth;
    cfg.sweep = SweepConfig{c.fixed, setup.varying_positions};
    ctx.record(c.name, cfg);
    const auto points = sweep_measurement_position(setup, cfg.ga, ctx.run_options(c.name, 0, setup.truth));

    auto straddles = [&](double x) { return (x - c.crack) * (c.fixed - c.crack) < 0.0; };
    double worst_same_side = 0.0;
    for (const SweepPoint& p : points) {
      if (!straddles(p.varying_position) && p.stats[0].samples > 0) {
        worst_same_side = std::max(worst_same_side, p.stats[0].position.stddev);
      }
    }
    nlohmann::json d = nlohmann::json::array();
    for (const SweepPoint& p : points) {
      const CrackStatistics& s = p.stats[0];
      const bool have = s.samples > 0;
      const double mx = have ? s.position.mean : kNaN;
      const double sx = have ? s.position.stddev : kNaN;
      const std::string item = "x_m=" + format_number(p.varying_position);
      if (straddles(p.varying_position)) {
        sheet.check(c.name, item, "mean_xi", c.crack, kNaN, mx, std::abs(mx - c.crack), 0.02);
        sheet.flag(c.name, item, "stddev_xi", kNaN, kNaN, sx, worst_same_side,
                   have && sx < worst_same_side);
      } else {
        sheet.info(c.name, item, "mean_xi", c.crack, kNaN, mx, std::abs(mx - c.crack));
        sheet.info(c.name, item, "stddev_xi", kNaN, kNaN, sx);
      }
      sheet.info(c.name, item, "mean_lambda", 0.07, kNaN, have ? s.flexibility.mean : kNaN);
      sheet.info(c.name, item, "stddev_lambda", kNaN, kNaN, have ? s.flexibility.stddev : kNaN);
      d.push_back({{"varying_position", p.varying_position}, {"statistics", statistics_json(p.stats)}});
    }
    ctx.details[c.name] = d;
  }
}

/// Single crack identified from two measurements under a point load.
ScenarioConfig literature_case(const Context& ctx, std::vector<double> positions) {
  ScenarioConfig cfg = ctx.config(BoundaryCondition::PinnedPinned, LoadCase(0.0, {{0.00175, 0.7143}}),
                                  std::move(positions), 10, 19);
  cfg.cracks = CrackSet({{0.57143, 0.086785}});
  cfg.remesh.iterations = 4;
  cfg.remesh.window_halfwidth_steps = 2;
  return cfg;
}

void bench_figure6(Context& ctx, Sheet& sheet) {
  const ScenarioConfig cfg = literature_case(ctx, {0.14286, 0.85714});
  ctx.record("remeshing", cfg);
  const auto its = iterate_identify(cfg.scenario(), cfg.remesh, cfg.ga,
                                    ctx.run_options("remeshing", cfg.remesh.events_per_iteration,
                                                    *cfg.cracks));
  const std::vector<Crack> paper{{0.550, 0.09}, {0.589, 0.085}, {0.577, 0.087}, {0.572, 0.086}};
  const Crack target{0.572, 0.086};
  nlohmann::json d = nlohmann::json::array();
  for (std::size_t i = 0; i < its.size(); ++i) {
    const RemeshIteration& it = its[i];
    const std::string item = "iteration " + std::to_string(i + 1);
    const double scale = std::pow(2.0, static_cast<double>(i));
    sheet.info("remeshing", item, "position_step", 0.05 / scale, kNaN, it.position_step);
    sheet.info("remeshing", item, "lambda_step", 0.01 / scale, kNaN, it.lambda_step);
    const bool have = !it.estimates.empty();
    const double mx = have ? it.estimates[0].position : kNaN;
    const double ml = have ? it.estimates[0].flexibility : kNaN;
    const double px = i < paper.size() ? paper[i].position : kNaN;
    const double pl = i < paper.size() ? paper[i].flexibility : kNaN;
    if (i + 1 == its.size()) {
      sheet.check("remeshing", item, "mean_xi", 0.57143, px, mx, std::abs(mx - target.position),
                  it.position_step + kExact);
      sheet.check("remeshing", item, "mean_lambda", 0.086785, pl, ml,
                  std::abs(ml - target.flexibility), it.lambda_step + kExact);
    } else {
      sheet.info("remeshing", item, "mean_xi", 0.57143, px, mx);
      sheet.info("remeshing", item, "mean_lambda", 0.086785, pl, ml);
    }
    std::vector<double> nodes(it.mesh.nodes().begin(), it.mesh.nodes().end());
    d.push_back({{"position_step", it.position_step},
                 {"lambda_step", it.lambda_step},
                 {"nodes", nodes},
                 {"statistics", statistics_json(it.run.cracks)},
                 {"best_cracks", cracks_json(it.run.best_cracks)}});
  }
  ctx.details["remeshing"] = d;
}

void bench_figure7(Context& ctx, Sheet& sheet) {
  const std::vector<double> eps = epsilon_grid(1.5e-6, 7);
  NoiseModel noise;
  noise.realizations = 5;
  struct Layout {
    std::string name;
    std::vector<double> positions;
  };
  const std::vector<Layout> layouts{{"M=2", {0.14286, 0.85714}}, {"M=3", {0.14286, 0.5, 0.85714}}};
  std::vector<std::pair<double, double>> mean_eta;
  for (const Layout& layout : layouts) {
    const ScenarioConfig cfg = literature_case(ctx, layout.positions);
    ctx.record(layout.name, cfg);
    SensitivitySetup setup;
    setup.bc = cfg.boundary;
    setup.load = cfg.load;
    setup.truth = *cfg.cracks;
    setup.mesh = cfg.mesh.build();
    setup.positions = layout.positions;
    const auto curve = sensitivity_curve(setup, eps, noise, cfg.remesh, cfg.ga,
                                         ctx.run_options(layout.name, 0, setup.truth));
    const double final_dx = 0.05 / std::pow(2.0, static_cast<double>(cfg.remesh.iterations - 1));
    const double final_dl = 0.01 / std::pow(2.0, static_cast<double>(cfg.remesh.iterations - 1));
    const Crack real = setup.truth[0];
    double sx = 0.0, sl = 0.0;
    nlohmann::json d = nlohmann::json::array();
    for (std::size_t k = 0; k < curve.size(); ++k) {
      const SensitivityPoint& p = curve[k];
      const std::string item = "eps=" + format_number(p.epsilon);
      const double ex = p.eta.empty() ? kNaN : p.eta[0].position;
      const double el = p.eta.empty() ? kNaN : p.eta[0].flexibility;
      sx += ex;
      sl += el;
      if (k == 0) {
        sheet.check(layout.name, item, "eta_xi", real.position, kNaN, ex, ex,
                    final_dx / real.position + kExact);
        sheet.check(layout.name, item, "eta_lambda", real.flexibility, kNaN, el, el,
                    final_dl / real.flexibility + kExact);
      } else if (k + 1 == curve.size()) {
        sheet.flag(layout.name, item, "eta_xi", real.position, kNaN, ex, 0.5, ex < 0.5);
        sheet.flag(layout.name, item, "eta_lambda", real.flexibility, kNaN, el, 0.5, el < 0.5);
      } else {
        sheet.info(layout.name, item, "eta_xi", real.position, kNaN, ex);
        sheet.info(layout.name, item, "eta_lambda", real.flexibility, kNaN, el);
      }
      nlohmann::json realizations = nlohmann::json::array();
      for (const CrackSet& r : p.realizations) realizations.push_back(cracks_json(r));
      d.push_back({{"epsilon", p.epsilon},
                   {"eta_xi", ex},
                   {"eta_lambda", el},
                   {"statistics", statistics_json(p.identified)},
                   {"realizations", realizations}});
    }
    ctx.details[layout.name] = d;
    const double n = static_cast<double>(curve.size());
    mean_eta.emplace_back(sx / n, sl / n);
  }
  sheet.flag("M=3 vs M=2", "grid mean", "eta_xi", kNaN, kNaN, mean_eta[1].first, mean_eta[0].first,
             mean_eta[1].first <= mean_eta[0].first);
  sheet.flag("M=3 vs M=2", "grid mean", "eta_lambda", kNaN, kNaN, mean_eta[1].second,
             mean_eta[0].second, mean_eta[1].second <= mean_eta[0].second);
}

using BenchFn = void (*)(Context&, Sheet&);

const std::map<std::string, BenchFn>& registry() {
  static const std::map<std::string, BenchFn> r{
      {"table2", bench_table2},   {"table3", bench_table3},   {"table4", bench_table4},
      {"table5", bench_table5},   {"table6", bench_table6},   {"table7", bench_table7},
      {"figure5", bench_figure5}, {"figure6", bench_figure6}, {"figure7", bench_figure7},
      {"figure10", bench_table4},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& bench_ids() {
  static const std::vector<std::string> ids{"table2",  "table3",  "table4",  "table5",
                                            "table6",  "table7",  "figure5", "figure6",
                                            "figure7", "figure10"};
  return ids;
}

std::string bench_id(const std::string& kind, const std::string& number) {
  std::string id = kind + number;
  std::transform(id.begin(), id.end(), id.begin(), [](unsigned char c) { return std::tolower(c); });
  if (!registry().contains(id)) {
    std::string known;
    for (const auto& k : bench_ids()) known += (known.empty() ? "" : ", ") + k;
    throw ValidationError("unknown bench '" + kind + (number.empty() ? "" : " " + number) +
                          "' (known: " + known + ")");
  }
  return id;
}

BenchResult run_bench(const std::string& id, const BenchOptions& options) {
  const std::string key = bench_id(id);
  Context ctx{options, key};
  Sheet sheet;
  const auto start = std::chrono::steady_clock::now();
  registry().at(key)(ctx, sheet);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  nlohmann::json results;
  results["passed"] = sheet.passed;
  results["rows"] = sheet.rows;
  results["details"] = ctx.details;
  nlohmann::json config = {{"bench", key}, {"events", options.events ? nlohmann::json(*options.events) : nlohmann::json(nullptr)}, {"cases", ctx.configs}};
  return BenchResult{key, sheet.passed, sheet.csv,
                     make_report("bench " + key, ctx.seed(), config, results, elapsed)};
}

void write_bench(const BenchResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  result.table.write(dir / (result.id + ".csv"));
  write_json(dir / (result.id + ".json"), result.report);
}

}  // namespace crackid::app
