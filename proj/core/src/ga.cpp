#include "crackid/ga.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "crackid/error.hpp"

namespace crackid {

namespace {

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

Gene random_gene(int g_max, Rng& rng) {
  return static_cast<Gene>(std::uniform_int_distribution<int>(0, g_max)(rng));
}

ParameterStats summarise(const std::vector<double>& values) {
  ParameterStats s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / n);
  return s;
}

bool lies_on_mesh(const CrackSet& cracks, const Mesh& mesh) {
  try {
    const CrackSet back = decode(encode(cracks, mesh), mesh);
    if (back.size() != cracks.size()) return false;
    for (std::size_t i = 0; i < back.size(); ++i) {
      if (std::abs(back[i].position - cracks[i].position) > 1e-9 ||
          std::abs(back[i].flexibility - cracks[i].flexibility) > 1e-9) {
        return false;
      }
    }
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

}  // namespace

void GaParams::validate() const {
  if (tournament_size < 2) throw ValidationError("tournament size must be >= 2");
  if (population < tournament_size) {
    throw ValidationError("population must be at least the tournament size");
  }
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    throw ValidationError("crossover rate must be in [0, 1]");
  }
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    throw ValidationError("mutation rate must be in [0, 1]");
  }
  if (generations < 1) throw ValidationError("generations must be >= 1");
  if (events < 1) throw ValidationError("events must be >= 1");
  if (!std::isfinite(fitness_offset)) throw ValidationError("fitness offset K must be finite");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + index + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Population init_population(const Mesh& mesh, const GaParams& params, Rng& rng) {
  Population population;
  population.reserve(params.population);
  for (std::size_t i = 0; i < params.population; ++i) {
    Chromosome c = Chromosome::zeros(mesh.size());
    for (Gene& g : c.genes()) g = random_gene(mesh.g_max(), rng);
    population.push_back(std::move(c));
  }
  return population;
}

std::size_t tournament_select(std::span<const double> fitnesses, std::size_t tournament_size,
                              Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, fitnesses.size() - 1);
  std::size_t winner = pick(rng);
  std::size_t ties = 1;
  for (std::size_t t = 1; t < tournament_size; ++t) {
    const std::size_t candidate = pick(rng);
    if (fitnesses[candidate] > fitnesses[winner]) {
      winner = candidate;
      ties = 1;
    } else if (fitnesses[candidate] == fitnesses[winner]) {
      ++ties;
      if (std::uniform_int_distribution<std::size_t>(0, ties - 1)(rng) == 0) winner = candidate;
    }
  }
  return winner;
}

Chromosome crossover_at(const Chromosome& first, const Chromosome& second, std::size_t cut) {
  if (first.size() != second.size()) throw ValidationError("crossover parents differ in length");
  if (cut > first.size()) throw ValidationError("crossover cut beyond chromosome length");
  Chromosome child = second;
  std::copy_n(first.genes().begin(), cut, child.genes().begin());
  return child;
}

Chromosome crossover(const Chromosome& first, const Chromosome& second, Rng& rng) {
  if (first.size() != second.size()) throw ValidationError("crossover parents differ in length");
  if (first.size() < 2) return first;
  const std::size_t cut = std::uniform_int_distribution<std::size_t>(1, first.size() - 1)(rng);
  return crossover_at(first, second, cut);
}

Chromosome mutate(Chromosome chromosome, double rate, int g_max, Rng& rng) {
  for (Gene& g : chromosome.genes()) {
    if (uniform01(rng) < rate) g = random_gene(g_max, rng);
  }
  return chromosome;
}

double diversity(const Population& population) {
  const std::size_t p = population.size();
  if (p < 2) return 0.0;
  const std::size_t n = population.front().size();
  if (n == 0) return 0.0;

  Gene top = 0;
  for (const Chromosome& c : population) {
    if (c.size() != n) throw ValidationError("population chromosomes differ in length");
    for (Gene g : c.genes()) top = std::max(top, g);
  }

  // Differing pairs at a locus = all pairs - pairs sharing a value.
  std::vector<std::size_t> counts(static_cast<std::size_t>(top) + 1);
  double differing = 0.0;
  const double pairs = 0.5 * static_cast<double>(p) * static_cast<double>(p - 1);
  for (std::size_t k = 0; k < n; ++k) {
    std::fill(counts.begin(), counts.end(), 0);
    for (const Chromosome& c : population) ++counts[c[k]];
    double same = 0.0;
    for (std::size_t count : counts) {
      if (count > 1) same += 0.5 * static_cast<double>(count) * static_cast<double>(count - 1);
    }
    differing += pairs - same;
  }
  return 100.0 * differing / (pairs * static_cast<double>(n));
}

FitnessEvaluator::FitnessEvaluator(const Scenario& scenario, double offset)
    : scenario_(&scenario), offset_(offset) {}

double FitnessEvaluator::operator()(const Chromosome& chromosome) {
  auto it = cache_.find(chromosome);
  if (it != cache_.end()) return it->second;
  const double f = fitness(chromosome, *scenario_, offset_);
  cache_.emplace(chromosome, f);
  return f;
}

std::vector<double> FitnessEvaluator::evaluate(const Population& population) {
  std::vector<double> out;
  out.reserve(population.size());
  for (const Chromosome& c : population) out.push_back((*this)(c));
  return out;
}

std::size_t recombined_count(const GaParams& params) {
  const auto r = std::lround(params.crossover_rate * static_cast<double>(params.population));
  return std::min<std::size_t>(params.population, static_cast<std::size_t>(std::max(0L, r)));
}

Population step_generation(const Population& population, std::span<const double> fitnesses,
                           const GaParams& params, int g_max, Rng& rng) {
  if (population.empty() || fitnesses.size() != population.size()) {
    throw ValidationError("population and fitness sizes differ");
  }
  const std::size_t size = params.population;
  const std::size_t recombined = recombined_count(params);

  Population children;
  children.reserve(size);
  for (std::size_t i = 0; i < recombined; ++i) {
    const Chromosome& a = population[tournament_select(fitnesses, params.tournament_size, rng)];
    const Chromosome& b = population[tournament_select(fitnesses, params.tournament_size, rng)];
    children.push_back(crossover(a, b, rng));
  }
  while (children.size() < size) {
    children.push_back(population[tournament_select(fitnesses, params.tournament_size, rng)]);
  }
  for (Chromosome& child : children) child = mutate(std::move(child), params.mutation_rate, g_max, rng);
  return children;
}

Population step_generation(const Population& population, const Scenario& scenario,
                           const GaParams& params, Rng& rng) {
  FitnessEvaluator evaluator(scenario, params.fitness_offset);
  const std::vector<double> f = evaluator.evaluate(population);
  return step_generation(population, f, params, scenario.mesh().g_max(), rng);
}

EventResult run_event(const Scenario& scenario, const GaParams& params, Rng& rng) {
  params.validate();
  FitnessEvaluator evaluator(scenario, params.fitness_offset);
  const int g_max = scenario.mesh().g_max();

  Population population = init_population(scenario.mesh(), params, rng);
  std::vector<double> f = evaluator.evaluate(population);

  EventResult result;
  auto track_best = [&] {
    const auto it = std::max_element(f.begin(), f.end());
    const auto idx = static_cast<std::size_t>(it - f.begin());
    if (result.best_chromosome.size() == 0 || *it > result.best_fitness) {
      result.best_fitness = *it;
      result.best_chromosome = population[idx];
    }
    return *it;
  };
  track_best();

  result.mean_fitness.reserve(params.generations);
  result.best_of_generation.reserve(params.generations);
  result.diversity.reserve(params.generations);
  for (std::size_t g = 0; g < params.generations; ++g) {
    population = step_generation(population, f, params, g_max, rng);
    f = evaluator.evaluate(population);
    result.best_of_generation.push_back(track_best());
    result.mean_fitness.push_back(std::accumulate(f.begin(), f.end(), 0.0) /
                                  static_cast<double>(f.size()));
    result.diversity.push_back(diversity(population));
  }
  return result;
}

std::vector<CrackStatistics> crack_statistics(std::span<const CrackSet> identified,
                                              const CrackSet* reference) {
  std::size_t slots = 0;
  if (reference != nullptr) {
    slots = reference->size();
  } else {
    std::map<std::size_t, std::size_t> frequency;
    for (const CrackSet& s : identified) {
      if (!s.empty()) ++frequency[s.size()];
    }
    std::size_t best = 0;
    for (const auto& [count, freq] : frequency) {
      if (freq > best) {
        best = freq;
        slots = count;
      }
    }
  }
  if (slots == 0) return {};

  std::vector<double> anchor(slots, 0.0);
  if (reference != nullptr) {
    for (std::size_t i = 0; i < slots; ++i) anchor[i] = (*reference)[i].position;
  } else {
    std::size_t n = 0;
    for (const CrackSet& s : identified) {
      if (s.size() != slots) continue;
      for (std::size_t i = 0; i < slots; ++i) anchor[i] += s[i].position;
      ++n;
    }
    for (double& a : anchor) a /= static_cast<double>(n);
  }

  std::vector<std::vector<double>> positions(slots), flexibilities(slots);
  for (const CrackSet& s : identified) {
    if (s.empty()) continue;
    for (std::size_t i = 0; i < slots; ++i) {
      const Crack* c = nullptr;
      if (s.size() == slots) {
        c = &s[i];
      } else {
        c = &*std::min_element(s.begin(), s.end(), [&](const Crack& a, const Crack& b) {
          return std::abs(a.position - anchor[i]) < std::abs(b.position - anchor[i]);
        });
      }
      positions[i].push_back(c->position);
      flexibilities[i].push_back(c->flexibility);
    }
  }

  std::vector<CrackStatistics> out(slots);
  for (std::size_t i = 0; i < slots; ++i) {
    out[i].position = summarise(positions[i]);
    out[i].flexibility = summarise(flexibilities[i]);
    out[i].samples = positions[i].size();
  }
  return out;
}

RunStatistics run_events(const Scenario& scenario, const GaParams& params,
                         const RunOptions& options) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();

  RunStatistics stats;
  stats.events.resize(params.events);

  std::atomic<std::size_t> next{0};
  std::mutex report_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < params.events; i = next++) {
      Rng rng(derive_seed(params.seed, i));
      stats.events[i] = run_event(scenario, params, rng);
      if (options.on_event) {
        std::lock_guard lock(report_mutex);
        options.on_event(i, stats.events[i]);
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, params.events);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(worker);
  }

  stats.identified.reserve(params.events);
  for (std::size_t i = 0; i < params.events; ++i) {
    stats.identified.push_back(decode(stats.events[i].best_chromosome, scenario.mesh()));
    if (i == 0 || stats.events[i].best_fitness > stats.best_fitness) {
      stats.best_event = i;
      stats.best_fitness = stats.events[i].best_fitness;
    }
  }
  stats.best_chromosome = stats.events[stats.best_event].best_chromosome;
  stats.best_cracks = stats.identified[stats.best_event];

  const CrackSet* reference = options.reference ? &*options.reference : nullptr;
  stats.cracks = crack_statistics(stats.identified, reference);
  if (reference != nullptr && lies_on_mesh(*reference, scenario.mesh())) {
    const Chromosome target = encode(*reference, scenario.mesh());
    stats.success_count = static_cast<std::size_t>(
        std::count_if(stats.events.begin(), stats.events.end(),
                      [&](const EventResult& e) { return e.best_chromosome == target; }));
  }

  stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

}  // namespace crackid
