#include "crackid/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crackid/error.hpp"

namespace crackid {

namespace {

constexpr std::uint64_t kNoiseStream = 0x401'5e00ULL;

CrackSet estimates_as_cracks(const std::vector<Crack>& estimates) {
  try {
    return CrackSet(estimates);
  } catch (const ValidationError&) {
    return CrackSet{};  // coincident means: nothing usable
  }
}

}  // namespace

void NoiseModel::validate() const {
  if (!(epsilon >= 0.0)) throw ValidationError("noise amplitude must be >= 0");
  if (realizations < 1) throw ValidationError("noise realizations must be >= 1");
}

std::vector<double> placement(std::size_t n) {
  if (n < 1) throw ValidationError("placement needs n >= 1");
  std::vector<double> out;
  out.reserve(2 * n);
  const double denom = static_cast<double>(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    const double c = static_cast<double>(i);
    out.push_back((c - 1.0 / 3.0) / denom);
    out.push_back((c + 1.0 / 3.0) / denom);
  }
  return out;
}

MeasurementSet corrupt(const MeasurementSet& clean, double epsilon, Rng& rng) {
  if (!(epsilon >= 0.0)) throw ValidationError("noise amplitude must be >= 0");
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Measurement> points(clean.points().begin(), clean.points().end());
  for (Measurement& m : points) m.displacement += epsilon * unit(rng);
  return MeasurementSet(std::move(points));
}

std::vector<double> epsilon_grid(double max_epsilon, std::size_t count) {
  if (count < 2) throw ValidationError("epsilon grid needs at least two values");
  if (!(max_epsilon >= 0.0)) throw ValidationError("noise amplitude must be >= 0");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = max_epsilon * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return out;
}

ParameterErrors error_eta(const Crack& identified_mean, const Crack& real) {
  if (!(real.position > 0.0) || !(real.flexibility > 0.0)) {
    throw ValidationError("relative errors need non-zero real position and flexibility");
  }
  return {std::abs(identified_mean.position - real.position) / real.position,
          std::abs(identified_mean.flexibility - real.flexibility) / real.flexibility};
}

ParameterErrors err_pct(const Crack& identified, const Crack& real, double lambda_max) {
  if (!(lambda_max > 0.0)) throw ValidationError("lambda_max must be positive");
  return {100.0 * std::abs(identified.position - real.position),
          100.0 * std::abs(identified.flexibility - real.flexibility) / lambda_max};
}

std::vector<SweepPoint> sweep_measurement_position(const SweepSetup& setup, const GaParams& params,
                                                   const RunOptions& options) {
  const BeamProblem truth(setup.bc, setup.truth, setup.load);
  RunOptions run_options = options;
  run_options.reference = setup.truth;

  std::vector<SweepPoint> out;
  out.reserve(setup.varying_positions.size());
  for (double varying : setup.varying_positions) {
    if (varying == setup.fixed_position) {
      throw ValidationError("swept position " + std::to_string(varying) +
                            " coincides with the fixed measurement");
    }
    const std::vector<double> positions = {setup.fixed_position, varying};
    const Scenario scenario(setup.bc, setup.load, setup.mesh, simulate_measurements(truth, positions));
    const RunStatistics run = run_events(scenario, params, run_options);
    out.push_back({varying, run.cracks});
  }
  return out;
}

std::vector<SensitivityPoint> sensitivity_curve(const SensitivitySetup& setup,
                                                std::span<const double> epsilons,
                                                const NoiseModel& noise, const RemeshPolicy& policy,
                                                const GaParams& params,
                                                const RunOptions& options) {
  noise.validate();
  const BeamProblem truth(setup.bc, setup.truth, setup.load);
  const MeasurementSet clean = simulate_measurements(truth, setup.positions);

  std::vector<SensitivityPoint> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) {
    SensitivityPoint point;
    point.epsilon = eps;
    for (std::size_t r = 0; r < noise.realizations; ++r) {
      const std::uint64_t stream = derive_seed(params.seed, kNoiseStream + r);
      Rng noise_rng(stream);
      const Scenario scenario(setup.bc, setup.load, setup.mesh, corrupt(clean, eps, noise_rng));
      GaParams realization_params = params;
      realization_params.seed = derive_seed(stream, 1);
      const auto iterations = iterate_identify(scenario, policy, realization_params, options);
      point.realizations.push_back(estimates_as_cracks(iterations.back().estimates));
    }
    point.identified = crack_statistics(point.realizations, &setup.truth);
    for (std::size_t i = 0; i < setup.truth.size(); ++i) {
      const CrackStatistics& s = point.identified[i];
      if (s.samples == 0) {
        const double nan = std::nan("");
        point.eta.push_back({nan, nan});
      } else {
        point.eta.push_back(error_eta({s.position.mean, s.flexibility.mean}, setup.truth[i]));
      }
    }
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace crackid
