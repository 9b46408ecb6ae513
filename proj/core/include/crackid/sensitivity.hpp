#pragma once

// Measurement layouts, instrumental noise and the error measures used to
// judge identifications.

#include <cstddef>
#include <span>
#include <vector>

#include "crackid/remesh.hpp"

namespace crackid {

struct NoiseModel {
  double epsilon = 0.0;          ///< absolute error amplitude
  std::size_t realizations = 5;

  void validate() const;
};

/// 2n positions (i -/+ 1/3) / (n + 1), i = 1..n, ascending: one pair around
/// each of n equally spaced cracks.
std::vector<double> placement(std::size_t n);

/// u + epsilon * R with R ~ U[-1, 1] independently per point.
MeasurementSet corrupt(const MeasurementSet& clean, double epsilon, Rng& rng);

/// n evenly spaced values from 0 to max_epsilon inclusive.
std::vector<double> epsilon_grid(double max_epsilon, std::size_t count);

struct ParameterErrors {
  double position = 0.0;
  double flexibility = 0.0;
};

/// Relative errors |mu - real| / real of averaged identifications.
ParameterErrors error_eta(const Crack& identified_mean, const Crack& real);

/// Percent errors: 100 |xi_i - xi_r| and 100 |lambda_i - lambda_r| / lambda_max.
ParameterErrors err_pct(const Crack& identified, const Crack& real, double lambda_max);

struct SweepSetup {
  BoundaryCondition bc = BoundaryCondition::PinnedPinned;
  LoadCase load;
  CrackSet truth;
  Mesh mesh = Mesh::uniform(99, 0.1, 10);
  double fixed_position = 0.1;
  std::vector<double> varying_positions;
};

struct SweepPoint {
  double varying_position = 0.0;
  std::vector<CrackStatistics> stats;  ///< one entry per true crack
};

/// For each varying position: clean measurements at {fixed, varying}, then
/// params.events GA events. Rejects a varying position equal to the fixed one.
std::vector<SweepPoint> sweep_measurement_position(const SweepSetup& setup, const GaParams& params,
                                                   const RunOptions& options = {});

struct SensitivitySetup {
  BoundaryCondition bc = BoundaryCondition::PinnedPinned;
  LoadCase load;
  CrackSet truth;
  Mesh mesh = Mesh::uniform(19, 0.1, 10);
  std::vector<double> positions;
};

struct SensitivityPoint {
  double epsilon = 0.0;
  std::vector<ParameterErrors> eta;        ///< per true crack
  std::vector<CrackStatistics> identified; ///< spread over realizations
  std::vector<CrackSet> realizations;      ///< final remesh estimates per realization
};

/// For every epsilon, `noise.realizations` corrupted copies of the clean
/// measurements are identified with the remeshing pipeline; eta compares the
/// realization means to the truth. Realization r reuses the same random
/// draws R at every epsilon.
std::vector<SensitivityPoint> sensitivity_curve(const SensitivitySetup& setup,
                                                std::span<const double> epsilons,
                                                const NoiseModel& noise, const RemeshPolicy& policy,
                                                const GaParams& params,
                                                const RunOptions& options = {});

}  // namespace crackid
