#pragma once

// Discretised inverse problem: candidate-crack mesh, integer chromosomes and
// the misfit/fitness they are ranked by.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "crackid/beam.hpp"

namespace crackid {

struct Measurement {
  double position = 0.0;
  double displacement = 0.0;

  friend bool operator==(const Measurement&, const Measurement&) = default;
};

/// At least two measurements at distinct positions strictly inside (0, 1).
class MeasurementSet {
 public:
  explicit MeasurementSet(std::vector<Measurement> points);

  std::span<const Measurement> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Measurement& operator[](std::size_t i) const { return points_[i]; }
  std::vector<double> positions() const;
  std::vector<double> displacements() const;

  friend bool operator==(const MeasurementSet&, const MeasurementSet&) = default;

 private:
  std::vector<Measurement> points_;
};

/// Clean measurements of the damaged beam computed with the closed form.
MeasurementSet simulate_measurements(const BeamProblem& problem, std::span<const double> positions);

using Gene = std::uint16_t;

/// Candidate crack positions with a quantised intensity per node.
///
/// Gene g at node k means no crack for g = 0 and a crack of flexibility
/// origin_k + g * lambda_step otherwise. Base meshes have origin 0, so
/// lambda_step = lambda_max / g_max; refined meshes move the origin to keep
/// g_max levels around a previous estimate.
class Mesh {
 public:
  /// nodes k/(N+1), k = 1..N.
  static Mesh uniform(std::size_t node_count, double lambda_max, int g_max);

  Mesh(std::vector<double> nodes, double lambda_max, int g_max);

  Mesh(std::vector<double> nodes, std::vector<double> intensity_origins, double lambda_step,
       int g_max, double position_step);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  double node(std::size_t k) const { return nodes_[k]; }
  int g_max() const noexcept { return g_max_; }
  double lambda_step() const noexcept { return lambda_step_; }
  double position_step() const noexcept { return position_step_; }
  double intensity_origin(std::size_t k) const { return origins_[k]; }
  std::span<const double> intensity_origins() const noexcept { return origins_; }

  /// Largest representable flexibility over all nodes.
  double lambda_max() const;

  double intensity(std::size_t k, Gene gene) const;

  /// int[(lambda - origin_k) / lambda_step]; throws if lambda exceeds the
  /// node's range or lies below its origin.
  Gene quantise(std::size_t k, double lambda) const;

  /// Nearest node, ties to the lower one.
  std::size_t nearest_node(double xi) const;

  /// (g_max + 1)^N as a floating-point number.
  double chromosome_space_size() const;

 private:
  std::vector<double> nodes_;
  std::vector<double> origins_;
  double lambda_step_ = 0.0;
  int g_max_ = 0;
  double position_step_ = 0.0;
};

class Chromosome {
 public:
  Chromosome() = default;
  explicit Chromosome(std::vector<Gene> genes) : genes_(std::move(genes)) {}

  static Chromosome zeros(std::size_t n) { return Chromosome(std::vector<Gene>(n, 0)); }

  std::size_t size() const noexcept { return genes_.size(); }
  std::span<const Gene> genes() const noexcept { return genes_; }
  std::span<Gene> genes() noexcept { return genes_; }
  Gene operator[](std::size_t k) const { return genes_[k]; }
  Gene& operator[](std::size_t k) { return genes_[k]; }

  /// Number of nonzero genes, i.e. asserted cracks.
  std::size_t damaged_count() const noexcept;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;

 private:
  std::vector<Gene> genes_;
};

struct ChromosomeHash {
  std::size_t operator()(const Chromosome& c) const noexcept;
};

CrackSet decode(const Chromosome& chromosome, const Mesh& mesh);

/// Snaps each crack to its nearest node and truncates its intensity level.
/// Throws ValidationError when two cracks share a node or an intensity is out
/// of range.
Chromosome encode(const CrackSet& cracks, const Mesh& mesh);

/// floor(M / 2); throws for M < 2.
int identifiable_cracks(std::size_t measurement_count);

/// Penalty steering the crack count towards n_c.
double cost_h(std::size_t damaged_count, int identifiable);

/// Everything needed to score a chromosome. Immutable; the undamaged
/// response at each measurement point is computed once on construction.
class Scenario {
 public:
  Scenario(BoundaryCondition bc, LoadCase load, Mesh mesh, MeasurementSet measurements);

  BoundaryCondition boundary() const noexcept { return bc_; }
  const LoadCase& load() const noexcept { return load_; }
  const Mesh& mesh() const noexcept { return mesh_; }
  const MeasurementSet& measurements() const noexcept { return measurements_; }
  std::span<const double> positions() const noexcept { return positions_; }
  std::span<const double> undamaged() const noexcept { return undamaged_; }
  int identifiable() const noexcept { return identifiable_; }

  /// Same beam and measurements on another mesh.
  Scenario with_mesh(Mesh mesh) const;

 private:
  BoundaryCondition bc_;
  LoadCase load_;
  Mesh mesh_;
  MeasurementSet measurements_;
  std::vector<double> positions_;
  std::vector<double> observed_;
  std::vector<double> undamaged_;
  int identifiable_ = 0;

  friend double objective(const CrackSet& cracks, const Scenario& scenario);
};

inline constexpr double kDefaultFitnessOffset = 150.0;

/// Root of summed squared misfits, each normalised by the undamaged response.
double objective(const CrackSet& cracks, const Scenario& scenario);
double objective(const Chromosome& chromosome, const Scenario& scenario);

/// K - objective - cost_h(damaged_count, n_c).
double fitness(const Chromosome& chromosome, const Scenario& scenario,
               double offset = kDefaultFitnessOffset);

}  // namespace crackid
