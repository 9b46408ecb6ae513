#include "crackid/app/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace crackid::app {

namespace {

constexpr std::uint64_t kIdentifyNoiseStream = 0x401eULL;

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& message) const {
    const YAML::Mark m = at.Mark();
    if (m.line < 0) throw ConfigError(source_, message);
    throw ConfigError(source_, m.line + 1, m.column + 1, message);
  }

  void expect_map(const YAML::Node& node, const std::string& what) const {
    if (!node.IsMap()) fail(node, what + " must be a mapping");
  }

  void only_keys(const YAML::Node& node, const std::string& what,
                 std::initializer_list<const char*> allowed) const {
    expect_map(node, what);
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!keys.contains(key)) fail(kv.first, "unknown key '" + key + "' in " + what);
    }
  }

  template <class T>
  T get(const YAML::Node& node, const std::string& what) const {
    if (!node.IsScalar()) fail(node, what + " must be a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, "cannot read " + what + " from '" + node.Scalar() + "'");
    }
  }

  template <class T>
  void maybe(const YAML::Node& parent, const char* key, T& out, const std::string& what) const {
    if (const YAML::Node n = parent[key]) out = get<T>(n, what);
  }

  std::size_t count(const YAML::Node& node, const std::string& what, std::size_t minimum) const {
    const auto v = get<long long>(node, what);
    if (v < static_cast<long long>(minimum)) {
      fail(node, what + " must be >= " + std::to_string(minimum));
    }
    return static_cast<std::size_t>(v);
  }

  double abscissa(const YAML::Node& node, const std::string& what) const {
    const auto x = get<double>(node, what);
    if (!(x > 0.0 && x < 1.0)) fail(node, what + " must lie strictly inside (0, 1)");
    return x;
  }

  std::vector<double> doubles(const YAML::Node& node, const std::string& what, bool inside) const {
    if (!node.IsSequence()) fail(node, what + " must be a list");
    std::vector<double> out;
    for (const YAML::Node& item : node) {
      out.push_back(inside ? abscissa(item, what) : get<double>(item, what));
    }
    return out;
  }

  const std::string& source() const noexcept { return source_; }

 private:
  std::string source_;
};

template <class F>
auto anchored(const Reader& r, const YAML::Node& at, F&& build) {
  try {
    return build();
  } catch (const ConfigError&) {
    throw;
  } catch (const ValidationError& e) {
    r.fail(at, e.what());
  }
}

LoadCase read_load(const Reader& r, const YAML::Node& node) {
  r.only_keys(node, "load", {"q0", "point_loads"});
  double q0 = 0.0;
  r.maybe(node, "q0", q0, "load.q0");
  std::vector<PointLoad> loads;
  if (const YAML::Node list = node["point_loads"]) {
    if (!list.IsSequence()) r.fail(list, "load.point_loads must be a list");
    for (const YAML::Node& item : list) {
      r.only_keys(item, "point load", {"F", "at"});
      if (!item["F"] || !item["at"]) r.fail(item, "a point load needs F and at");
      loads.push_back({r.get<double>(item["F"], "point load F"),
                       r.abscissa(item["at"], "point load position")});
    }
  }
  return LoadCase(q0, std::move(loads));
}

CrackSet read_cracks(const Reader& r, const YAML::Node& node) {
  if (!node.IsSequence()) r.fail(node, "cracks must be a list");
  std::vector<Crack> cracks;
  for (const YAML::Node& item : node) {
    r.only_keys(item, "crack", {"position", "flexibility"});
    if (!item["position"] || !item["flexibility"]) {
      r.fail(item, "a crack needs position and flexibility");
    }
    cracks.push_back({r.abscissa(item["position"], "crack position"),
                      r.get<double>(item["flexibility"], "crack flexibility")});
  }
  return anchored(r, node, [&] { return CrackSet(std::move(cracks)); });
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, int column, const std::string& message)
    : ValidationError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                      message) {}

ConfigError::ConfigError(const std::string& source, const std::string& message)
    : ValidationError(source + ": " + message) {}

Mesh MeshConfig::build() const {
  if (!node_positions.empty()) return Mesh(node_positions, lambda_max, g_max);
  return Mesh::uniform(nodes, lambda_max, g_max);
}

MeasurementSet ScenarioConfig::clean_measurements() const {
  if (values) {
    std::vector<Measurement> points;
    for (std::size_t j = 0; j < positions.size(); ++j) points.push_back({positions[j], (*values)[j]});
    return MeasurementSet(std::move(points));
  }
  return simulate_measurements(BeamProblem(boundary, *cracks, load), positions);
}

MeasurementSet ScenarioConfig::measurements() const {
  MeasurementSet clean = clean_measurements();
  if (noise.epsilon == 0.0) return clean;
  Rng rng(derive_seed(ga.seed, kIdentifyNoiseStream));
  return corrupt(clean, noise.epsilon, rng);
}

Scenario ScenarioConfig::scenario() const {
  return Scenario(boundary, load, mesh.build(), measurements());
}

nlohmann::json ScenarioConfig::to_json() const {
  using nlohmann::json;
  json j;
  j["boundary"] = std::string(to_string(boundary));
  json loads = json::array();
  for (const PointLoad& f : load.point_loads()) loads.push_back({{"F", f.intensity}, {"at", f.position}});
  j["load"] = {{"q0", load.uniform()}, {"point_loads", loads}};
  if (cracks) {
    json list = json::array();
    for (const Crack& c : *cracks) list.push_back({{"position", c.position}, {"flexibility", c.flexibility}});
    j["cracks"] = list;
  }
  j["measurements"]["positions"] = positions;
  if (values) j["measurements"]["values"] = *values;
  if (mesh.node_positions.empty()) {
    j["mesh"]["nodes"] = mesh.nodes;
  } else {
    j["mesh"]["node_positions"] = mesh.node_positions;
  }
  j["mesh"]["lambda_max"] = mesh.lambda_max;
  j["mesh"]["g_max"] = mesh.g_max;
  j["ga"] = {{"population", ga.population},         {"generations", ga.generations},
             {"crossover_rate", ga.crossover_rate}, {"mutation_rate", ga.mutation_rate},
             {"tournament_size", ga.tournament_size}, {"K", ga.fitness_offset},
             {"events", ga.events}};
  j["remesh"] = {{"iterations", remesh.iterations},
                 {"window", remesh.window_halfwidth_steps},
                 {"events_per_iteration", remesh.events_per_iteration}};
  j["noise"] = {{"epsilon", noise.epsilon},
                {"realizations", noise.realizations},
                {"grid", {{"max", noise.grid_max}, {"count", noise.grid_count}}}};
  if (sweep) j["sweep"] = {{"fixed", sweep->fixed}, {"varying", sweep->varying}};
  j["solve"] = {{"points", solve_points}};
  j["seed"] = ga.seed;
  return j;
}

ScenarioConfig parse_config(const std::string& text, const std::string& source) {
  const Reader r(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source, e.mark.line + 1, e.mark.column + 1, e.msg);
  }
  if (!root.IsDefined() || root.IsNull()) throw ConfigError(source, "empty configuration");
  r.only_keys(root, "configuration",
              {"boundary", "load", "cracks", "measurements", "mesh", "ga", "remesh", "noise",
               "sweep", "solve", "seed"});

  ScenarioConfig cfg;
  if (const YAML::Node n = root["boundary"]) {
    const auto name = r.get<std::string>(n, "boundary");
    cfg.boundary = anchored(r, n, [&] { return parse_boundary_condition(name); });
  } else {
    r.fail(root, "missing key 'boundary'");
  }

  if (const YAML::Node n = root["load"]) cfg.load = read_load(r, n);
  if (const YAML::Node n = root["cracks"]) cfg.cracks = read_cracks(r, n);

  const YAML::Node meas = root["measurements"];
  if (!meas) r.fail(root, "missing key 'measurements'");
  r.only_keys(meas, "measurements", {"positions", "values"});
  if (!meas["positions"]) r.fail(meas, "measurements.positions is required");
  cfg.positions = r.doubles(meas["positions"], "measurement position", true);
  if (const YAML::Node v = meas["values"]) {
    cfg.values = r.doubles(v, "measured value", false);
    if (cfg.values->size() != cfg.positions.size()) {
      r.fail(v, "measurements.values needs one value per position");
    }
    if (cfg.cracks) r.fail(v, "give either cracks (simulation) or measurements.values (data), not both");
  } else if (!cfg.cracks) {
    r.fail(meas, "give either cracks (simulation) or measurements.values (data)");
  }

  if (const YAML::Node n = root["mesh"]) {
    r.only_keys(n, "mesh", {"nodes", "node_positions", "lambda_max", "g_max"});
    if (n["nodes"] && n["node_positions"]) r.fail(n, "give either mesh.nodes or mesh.node_positions");
    if (n["nodes"]) cfg.mesh.nodes = r.count(n["nodes"], "mesh.nodes", 1);
    if (n["node_positions"]) {
      cfg.mesh.node_positions = r.doubles(n["node_positions"], "mesh node", true);
    }
    r.maybe(n, "lambda_max", cfg.mesh.lambda_max, "mesh.lambda_max");
    r.maybe(n, "g_max", cfg.mesh.g_max, "mesh.g_max");
    anchored(r, n, [&] { return cfg.mesh.build(); });
  }

  if (const YAML::Node n = root["ga"]) {
    r.only_keys(n, "ga",
                {"population", "generations", "crossover_rate", "mutation_rate", "tournament_size",
                 "K", "events"});
    if (n["population"]) cfg.ga.population = r.count(n["population"], "ga.population", 1);
    if (n["generations"]) cfg.ga.generations = r.count(n["generations"], "ga.generations", 1);
    if (n["tournament_size"]) {
      cfg.ga.tournament_size = r.count(n["tournament_size"], "ga.tournament_size", 1);
    }
    if (n["events"]) cfg.ga.events = r.count(n["events"], "ga.events", 1);
    r.maybe(n, "crossover_rate", cfg.ga.crossover_rate, "ga.crossover_rate");
    r.maybe(n, "mutation_rate", cfg.ga.mutation_rate, "ga.mutation_rate");
    r.maybe(n, "K", cfg.ga.fitness_offset, "ga.K");
    anchored(r, n, [&] {
      cfg.ga.validate();
      return 0;
    });
  }

  if (const YAML::Node n = root["remesh"]) {
    r.only_keys(n, "remesh", {"iterations", "window", "events_per_iteration"});
    if (n["iterations"]) cfg.remesh.iterations = r.count(n["iterations"], "remesh.iterations", 1);
    if (n["window"]) cfg.remesh.window_halfwidth_steps = r.count(n["window"], "remesh.window", 1);
    if (n["events_per_iteration"]) {
      cfg.remesh.events_per_iteration =
          r.count(n["events_per_iteration"], "remesh.events_per_iteration", 1);
    }
  }

  if (const YAML::Node n = root["noise"]) {
    r.only_keys(n, "noise", {"epsilon", "realizations", "grid"});
    r.maybe(n, "epsilon", cfg.noise.epsilon, "noise.epsilon");
    if (!(cfg.noise.epsilon >= 0.0)) r.fail(n["epsilon"], "noise.epsilon must be >= 0");
    if (n["realizations"]) {
      cfg.noise.realizations = r.count(n["realizations"], "noise.realizations", 1);
    }
    if (const YAML::Node g = n["grid"]) {
      r.only_keys(g, "noise.grid", {"max", "count"});
      r.maybe(g, "max", cfg.noise.grid_max, "noise.grid.max");
      if (!(cfg.noise.grid_max >= 0.0)) r.fail(g["max"], "noise.grid.max must be >= 0");
      if (g["count"]) cfg.noise.grid_count = r.count(g["count"], "noise.grid.count", 2);
    }
  }

  if (const YAML::Node n = root["sweep"]) {
    r.only_keys(n, "sweep", {"fixed", "varying"});
    SweepConfig s;
    if (!n["fixed"] || !n["varying"]) r.fail(n, "sweep needs fixed and varying");
    s.fixed = r.abscissa(n["fixed"], "sweep.fixed");
    s.varying = r.doubles(n["varying"], "sweep position", true);
    for (std::size_t k = 0; k < s.varying.size(); ++k) {
      if (s.varying[k] == s.fixed) r.fail(n["varying"][k], "swept position equals the fixed one");
    }
    cfg.sweep = std::move(s);
  }

  if (const YAML::Node n = root["solve"]) {
    r.only_keys(n, "solve", {"points"});
    if (n["points"]) cfg.solve_points = r.count(n["points"], "solve.points", 2);
  }

  if (const YAML::Node n = root["seed"]) cfg.ga.seed = r.get<std::uint64_t>(n, "seed");

  // Measurement positions must be distinct and the undamaged beam must move there.
  anchored(r, meas, [&] { return Scenario(cfg.boundary, cfg.load, cfg.mesh.build(), cfg.clean_measurements()); });
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

}  // namespace crackid::app
