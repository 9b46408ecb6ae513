#include "crackid/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "crackid/error.hpp"

namespace crackid {

namespace {

constexpr double kUndamagedFloor = 1e-12;
// Absorbs round-off in ratios such as 0.05 / 0.01 before truncation.
constexpr double kTruncationSlack = 1e-9;

void check_nodes(std::span<const double> nodes) {
  if (nodes.empty()) throw ValidationError("mesh needs at least one node");
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (!(nodes[k] > 0.0 && nodes[k] < 1.0)) {
      throw ValidationError("mesh node " + std::to_string(nodes[k]) + " outside (0, 1)");
    }
    if (k > 0 && !(nodes[k] > nodes[k - 1])) {
      throw ValidationError("mesh nodes must be strictly increasing");
    }
  }
}

double smallest_gap(std::span<const double> nodes) {
  if (nodes.size() == 1) return std::min(nodes[0], 1.0 - nodes[0]);
  double gap = 1.0;
  for (std::size_t k = 1; k < nodes.size(); ++k) gap = std::min(gap, nodes[k] - nodes[k - 1]);
  return gap;
}

}  // namespace

MeasurementSet::MeasurementSet(std::vector<Measurement> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw ValidationError("at least two measurements are required");
  for (std::size_t j = 0; j < points_.size(); ++j) {
    const Measurement& m = points_[j];
    if (!(m.position > 0.0 && m.position < 1.0)) {
      throw ValidationError("measurement position " + std::to_string(m.position) +
                            " outside (0, 1)");
    }
    if (!std::isfinite(m.displacement)) throw ValidationError("measured displacement not finite");
    for (std::size_t i = 0; i < j; ++i) {
      if (points_[i].position == m.position) {
        throw ValidationError("duplicate measurement position " + std::to_string(m.position));
      }
    }
  }
}

std::vector<double> MeasurementSet::positions() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const Measurement& m : points_) out.push_back(m.position);
  return out;
}

std::vector<double> MeasurementSet::displacements() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const Measurement& m : points_) out.push_back(m.displacement);
  return out;
}

MeasurementSet simulate_measurements(const BeamProblem& problem, std::span<const double> positions) {
  const BeamSolution solution(problem);
  std::vector<Measurement> points;
  points.reserve(positions.size());
  for (double xi : positions) points.push_back({xi, solution.deflection(xi)});
  return MeasurementSet(std::move(points));
}

Mesh Mesh::uniform(std::size_t node_count, double lambda_max, int g_max) {
  if (node_count == 0) throw ValidationError("mesh needs at least one node");
  std::vector<double> nodes(node_count);
  const double denom = static_cast<double>(node_count + 1);
  for (std::size_t k = 0; k < node_count; ++k) nodes[k] = static_cast<double>(k + 1) / denom;
  Mesh mesh(std::move(nodes), lambda_max, g_max);
  mesh.position_step_ = 1.0 / denom;
  return mesh;
}

Mesh::Mesh(std::vector<double> nodes, double lambda_max, int g_max)
    : nodes_(std::move(nodes)), g_max_(g_max) {
  check_nodes(nodes_);
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    throw ValidationError("lambda_max must be positive");
  }
  if (g_max < 1 || g_max > 65535) throw ValidationError("g_max must be in 1..65535");
  origins_.assign(nodes_.size(), 0.0);
  lambda_step_ = lambda_max / g_max;
  position_step_ = smallest_gap(nodes_);
}

Mesh::Mesh(std::vector<double> nodes, std::vector<double> intensity_origins, double lambda_step,
           int g_max, double position_step)
    : nodes_(std::move(nodes)),
      origins_(std::move(intensity_origins)),
      lambda_step_(lambda_step),
      g_max_(g_max),
      position_step_(position_step) {
  check_nodes(nodes_);
  if (origins_.size() != nodes_.size()) {
    throw ValidationError("one intensity origin per node is required");
  }
  for (double o : origins_) {
    if (!(o >= 0.0)) throw ValidationError("intensity origins must be >= 0");
  }
  if (!(lambda_step_ > 0.0)) throw ValidationError("lambda step must be positive");
  if (g_max < 1 || g_max > 65535) throw ValidationError("g_max must be in 1..65535");
  if (!(position_step_ > 0.0)) throw ValidationError("position step must be positive");
}

double Mesh::lambda_max() const {
  return *std::max_element(origins_.begin(), origins_.end()) + g_max_ * lambda_step_;
}

double Mesh::intensity(std::size_t k, Gene gene) const {
  if (gene == 0) return 0.0;
  return origins_[k] + gene * lambda_step_;
}

Gene Mesh::quantise(std::size_t k, double lambda) const {
  if (lambda == 0.0) return 0;
  const double level = std::floor((lambda - origins_[k]) / lambda_step_ + kTruncationSlack);
  if (level > g_max_) {
    throw ValidationError("flexibility " + std::to_string(lambda) +
                          " exceeds the representable maximum " +
                          std::to_string(origins_[k] + g_max_ * lambda_step_));
  }
  if (level < 0.0) {
    throw ValidationError("flexibility " + std::to_string(lambda) +
                          " below the node's representable range");
  }
  return static_cast<Gene>(level);
}

std::size_t Mesh::nearest_node(double xi) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), xi);
  if (it == nodes_.begin()) return 0;
  if (it == nodes_.end()) return nodes_.size() - 1;
  const auto hi = static_cast<std::size_t>(it - nodes_.begin());
  const std::size_t lo = hi - 1;
  return (xi - nodes_[lo] <= nodes_[hi] - xi) ? lo : hi;
}

double Mesh::chromosome_space_size() const {
  return std::pow(static_cast<double>(g_max_) + 1.0, static_cast<double>(nodes_.size()));
}

std::size_t Chromosome::damaged_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(genes_.begin(), genes_.end(),
                                                [](Gene g) { return g != 0; }));
}

std::size_t ChromosomeHash::operator()(const Chromosome& c) const noexcept {
  const auto genes = c.genes();
  return std::hash<std::string_view>{}(std::string_view(
      reinterpret_cast<const char*>(genes.data()), genes.size() * sizeof(Gene)));
}

CrackSet decode(const Chromosome& chromosome, const Mesh& mesh) {
  if (chromosome.size() != mesh.size()) {
    throw ValidationError("chromosome length " + std::to_string(chromosome.size()) +
                          " does not match mesh size " + std::to_string(mesh.size()));
  }
  std::vector<Crack> cracks;
  for (std::size_t k = 0; k < chromosome.size(); ++k) {
    if (chromosome[k] == 0) continue;
    cracks.push_back({mesh.node(k), mesh.intensity(k, chromosome[k])});
  }
  return CrackSet(std::move(cracks));
}

Chromosome encode(const CrackSet& cracks, const Mesh& mesh) {
  Chromosome chromosome = Chromosome::zeros(mesh.size());
  std::vector<bool> taken(mesh.size(), false);
  for (const Crack& c : cracks) {
    const std::size_t k = mesh.nearest_node(c.position);
    if (taken[k]) {
      throw ValidationError("two cracks snap to mesh node " + std::to_string(k + 1));
    }
    taken[k] = true;
    chromosome[k] = mesh.quantise(k, c.flexibility);
  }
  return chromosome;
}

int identifiable_cracks(std::size_t measurement_count) {
  if (measurement_count < 2) throw ValidationError("at least two measurements are required");
  return static_cast<int>(measurement_count / 2);
}

double cost_h(std::size_t damaged_count, int identifiable) {
  const auto sigma = static_cast<long long>(damaged_count);
  const auto nc = static_cast<long long>(identifiable);
  if (sigma > nc) return static_cast<double>(sigma - nc);
  if (sigma == nc) return 0.0;
  return 0.01 / static_cast<double>(nc - sigma + 1);
}

Scenario::Scenario(BoundaryCondition bc, LoadCase load, Mesh mesh, MeasurementSet measurements)
    : bc_(bc),
      load_(std::move(load)),
      mesh_(std::move(mesh)),
      measurements_(std::move(measurements)),
      positions_(measurements_.positions()),
      observed_(measurements_.displacements()),
      identifiable_(identifiable_cracks(measurements_.size())) {
  undamaged_ = deflections(BeamProblem(bc_, CrackSet{}, load_), positions_);
  for (std::size_t j = 0; j < undamaged_.size(); ++j) {
    if (!(std::abs(undamaged_[j]) > kUndamagedFloor)) {
      throw ValidationError("undamaged deflection vanishes at measurement position " +
                            std::to_string(positions_[j]));
    }
  }
}

Scenario Scenario::with_mesh(Mesh mesh) const {
  return Scenario(bc_, load_, std::move(mesh), measurements_);
}

double objective(const CrackSet& cracks, const Scenario& scenario) {
  const BeamSolution solution(BeamProblem(scenario.bc_, cracks, scenario.load_));
  double sum = 0.0;
  for (std::size_t j = 0; j < scenario.positions_.size(); ++j) {
    const double r = (solution.deflection(scenario.positions_[j]) - scenario.observed_[j]) /
                     scenario.undamaged_[j];
    sum += r * r;
  }
  return std::sqrt(sum);
}

double objective(const Chromosome& chromosome, const Scenario& scenario) {
  return objective(decode(chromosome, scenario.mesh()), scenario);
}

double fitness(const Chromosome& chromosome, const Scenario& scenario, double offset) {
  return offset - objective(chromosome, scenario) -
         cost_h(chromosome.damaged_count(), scenario.identifiable());
}

}  // namespace crackid
