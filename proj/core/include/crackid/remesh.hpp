#pragma once

#include <cstddef>
#include <vector>

#include "crackid/ga.hpp"

namespace crackid {

struct RemeshPolicy {
  std::size_t iterations = 4;
  std::size_t window_halfwidth_steps = 2;  ///< w, in previous grid steps
  std::size_t events_per_iteration = 10;

  void validate() const;
};

/// Halves the position and intensity steps around each estimate.
///
/// Nodes sit at xi_hat + k * dxi/2 for |k| <= 2w (the window
/// [xi_hat - w dxi, xi_hat + w dxi] clipped to (0, 1)), merged over
/// estimates. Intensity levels keep g_max but halve lambda_step, with the
/// origin chosen so the estimate is itself a level near the middle of the
/// range.
Mesh refine_mesh(const Mesh& previous, const std::vector<Crack>& estimates,
                 std::size_t window_halfwidth_steps = 2);

struct RemeshIteration {
  double position_step = 0.0;
  double lambda_step = 0.0;
  Mesh mesh;
  std::vector<Crack> estimates;  ///< per-crack means over the iteration's events
  RunStatistics run;
  double best_objective = 0.0;   ///< objective of the iteration's best chromosome
};

/// Repeated identification with refinement between iterations. An iteration
/// that identifies no crack leaves the mesh unchanged.
std::vector<RemeshIteration> iterate_identify(const Scenario& scenario, const RemeshPolicy& policy,
                                              const GaParams& params, const RunOptions& options = {});

}  // namespace crackid
