#include <benchmark/benchmark.h>

#include <vector>

#include "crackid/beam.hpp"
#include "crackid/ga.hpp"
#include "crackid/oracle.hpp"

using namespace crackid;

namespace {

BeamProblem five_cracks() {
  return BeamProblem(BoundaryCondition::ClampedClamped,
                     CrackSet({{0.17, 0.05}, {0.33, 0.05}, {0.5, 0.05}, {0.67, 0.05}, {0.83, 0.05}}),
                     LoadCase(50.0, {{1.0, 0.4}}));
}

Scenario single_crack_scenario(std::size_t nodes) {
  const BeamProblem truth(BoundaryCondition::PinnedPinned, CrackSet({{0.6, 0.07}}), LoadCase(50.0));
  return Scenario(BoundaryCondition::PinnedPinned, LoadCase(50.0), Mesh::uniform(nodes, 0.1, 10),
                  simulate_measurements(truth, std::vector<double>{0.1, 0.9}));
}

void BM_Solve(benchmark::State& state) {
  const BeamProblem p = five_cracks();
  for (auto _ : state) {
    BeamSolution s(p);
    benchmark::DoNotOptimize(s.constants());
  }
}
BENCHMARK(BM_Solve);

void BM_Deflection(benchmark::State& state) {
  const BeamSolution s(five_cracks());
  double xi = 0.0;
  for (auto _ : state) {
    xi = xi > 0.99 ? 0.01 : xi + 0.0137;
    benchmark::DoNotOptimize(s.deflection(xi));
  }
}
BENCHMARK(BM_Deflection);

void BM_Oracle(benchmark::State& state) {
  const BeamProblem p = five_cracks();
  for (auto _ : state) {
    ContinuityOracle o(p);
    benchmark::DoNotOptimize(o.deflection(0.45));
  }
}
BENCHMARK(BM_Oracle);

void BM_Fitness(benchmark::State& state) {
  const Scenario scen = single_crack_scenario(static_cast<std::size_t>(state.range(0)));
  Rng rng(1);
  GaParams params;
  const Population pop = init_population(scen.mesh(), params, rng);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fitness(pop[k], scen));
    k = (k + 1) % pop.size();
  }
}
BENCHMARK(BM_Fitness)->Arg(19)->Arg(99);

void BM_Event(benchmark::State& state) {
  const Scenario scen = single_crack_scenario(static_cast<std::size_t>(state.range(0)));
  GaParams params;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(derive_seed(params.seed, seed++));
    benchmark::DoNotOptimize(run_event(scen, params, rng).best_fitness);
  }
  state.SetLabel("P=100, 150 generations");
}
BENCHMARK(BM_Event)->Arg(19)->Arg(99)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
