#pragma once

// Integer-gene genetic algorithm: tournament selection, single-point
// crossover, cloning and per-gene resampling mutation, repeated over
// independent events.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "crackid/inverse.hpp"

namespace crackid {

using Rng = std::mt19937_64;
using Population = std::vector<Chromosome>;

struct GaParams {
  std::size_t population = 100;
  std::size_t generations = 150;
  double crossover_rate = 0.80;
  double mutation_rate = 0.01;  ///< per gene
  std::size_t tournament_size = 3;
  double fitness_offset = kDefaultFitnessOffset;  ///< K
  std::size_t events = 100;
  std::uint64_t seed = 20160101;

  /// Throws ValidationError if any invariant is broken.
  void validate() const;
};

/// splitmix64(master + index): independent, reproducible per-event streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

Population init_population(const Mesh& mesh, const GaParams& params, Rng& rng);

/// Index of the tournament winner; draws with replacement and breaks exact
/// fitness ties uniformly among the tied entrants.
std::size_t tournament_select(std::span<const double> fitnesses, std::size_t tournament_size,
                              Rng& rng);

/// Genes [0, cut) from the first parent, [cut, N) from the second.
Chromosome crossover_at(const Chromosome& first, const Chromosome& second, std::size_t cut);

/// Single-point crossover with the cut drawn uniformly from 1..N-1.
Chromosome crossover(const Chromosome& first, const Chromosome& second, Rng& rng);

/// Every gene is, with probability `rate`, redrawn uniformly from 0..g_max.
Chromosome mutate(Chromosome chromosome, double rate, int g_max, Rng& rng);

/// Mean pairwise Hamming distance, in percent of the chromosome length.
double diversity(const Population& population);

/// Memoised fitness of one scenario. Not thread-safe; one per event.
class FitnessEvaluator {
 public:
  FitnessEvaluator(const Scenario& scenario, double offset);

  double operator()(const Chromosome& chromosome);
  std::vector<double> evaluate(const Population& population);

  const Scenario& scenario() const noexcept { return *scenario_; }

 private:
  const Scenario* scenario_;
  double offset_;
  std::unordered_map<Chromosome, double, ChromosomeHash> cache_;
};

/// round(crossover_rate * P), the number of recombined children.
std::size_t recombined_count(const GaParams& params);

/// One generation from precomputed fitnesses: recombined_count(params)
/// recombined children first, the rest clones of tournament winners, then
/// mutation of every child.
Population step_generation(const Population& population, std::span<const double> fitnesses,
                           const GaParams& params, int g_max, Rng& rng);

Population step_generation(const Population& population, const Scenario& scenario,
                           const GaParams& params, Rng& rng);

struct EventResult {
  Chromosome best_chromosome;  ///< best ever seen, initial population included
  double best_fitness = 0.0;
  std::vector<double> mean_fitness;   ///< per generation
  std::vector<double> best_of_generation;
  std::vector<double> diversity;      ///< per generation, percent
};

EventResult run_event(const Scenario& scenario, const GaParams& params, Rng& rng);

struct ParameterStats {
  double mean = 0.0;
  double stddev = 0.0;
};

struct CrackStatistics {
  ParameterStats position;
  ParameterStats flexibility;
  std::size_t samples = 0;
};

/// Per-crack mean and (population) standard deviation over identified crack
/// sets. Slots follow the reference when given, else the most frequent crack
/// count; sets with another count contribute their crack nearest to each
/// slot, empty sets are skipped.
std::vector<CrackStatistics> crack_statistics(std::span<const CrackSet> identified,
                                              const CrackSet* reference = nullptr);

struct RunOptions {
  std::optional<CrackSet> reference;
  std::size_t jobs = 1;
  /// Called once per finished event, serialised (never concurrently).
  std::function<void(std::size_t, const EventResult&)> on_event;
};

struct RunStatistics {
  std::vector<EventResult> events;
  std::vector<CrackSet> identified;  ///< decoded best chromosome per event
  std::vector<CrackStatistics> cracks;
  std::optional<std::size_t> success_count;  ///< when the reference lies on the mesh
  std::size_t best_event = 0;
  Chromosome best_chromosome;
  double best_fitness = 0.0;
  CrackSet best_cracks;
  double elapsed_seconds = 0.0;
};

RunStatistics run_events(const Scenario& scenario, const GaParams& params,
                         const RunOptions& options = {});

}  // namespace crackid
