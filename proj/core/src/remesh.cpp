#include "crackid/remesh.hpp"

#include <algorithm>
#include <cmath>

#include "crackid/error.hpp"

namespace crackid {

namespace {

constexpr double kEdgeTolerance = 1e-12;
constexpr double kMergeTolerance = 1e-12;

}  // namespace

void RemeshPolicy::validate() const {
  if (iterations < 1) throw ValidationError("remesh iterations must be >= 1");
  if (window_halfwidth_steps < 1) throw ValidationError("remesh window must be >= 1 step");
  if (events_per_iteration < 1) throw ValidationError("remesh events per iteration must be >= 1");
}

Mesh refine_mesh(const Mesh& previous, const std::vector<Crack>& estimates,
                 std::size_t window_halfwidth_steps) {
  if (estimates.empty()) throw ValidationError("refine_mesh needs at least one estimate");
  if (window_halfwidth_steps < 1) throw ValidationError("remesh window must be >= 1 step");

  const double step = previous.position_step() / 2.0;
  const double lambda_step = previous.lambda_step() / 2.0;
  const int g_max = previous.g_max();
  const auto reach = static_cast<long>(2 * window_halfwidth_steps);

  struct Node {
    double position;
    double origin;
  };
  std::vector<Node> nodes;
  for (const Crack& e : estimates) {
    if (!(e.position > 0.0 && e.position < 1.0)) {
      throw ValidationError("estimate position outside (0, 1)");
    }
    // Put the estimate at level ~g_max/2, never letting the origin go negative.
    const double below = std::min(std::floor(g_max / 2.0), std::floor(e.flexibility / lambda_step));
    const double origin = std::max(0.0, e.flexibility - below * lambda_step);
    for (long k = -reach; k <= reach; ++k) {
      const double x = e.position + static_cast<double>(k) * step;
      if (x <= kEdgeTolerance || x >= 1.0 - kEdgeTolerance) continue;
      nodes.push_back({x, origin});
    }
  }
  if (nodes.empty()) throw ValidationError("refinement window lies outside (0, 1)");

  std::stable_sort(nodes.begin(), nodes.end(),
                   [](const Node& a, const Node& b) { return a.position < b.position; });
  std::vector<double> positions;
  std::vector<double> origins;
  for (const Node& n : nodes) {
    if (!positions.empty() && n.position - positions.back() <= kMergeTolerance) continue;
    positions.push_back(n.position);
    origins.push_back(n.origin);
  }
  return Mesh(std::move(positions), std::move(origins), lambda_step, g_max, step);
}

std::vector<RemeshIteration> iterate_identify(const Scenario& scenario, const RemeshPolicy& policy,
                                              const GaParams& params, const RunOptions& options) {
  policy.validate();
  GaParams iteration_params = params;
  iteration_params.events = policy.events_per_iteration;

  std::vector<RemeshIteration> out;
  out.reserve(policy.iterations);
  Scenario current = scenario;
  for (std::size_t it = 0; it < policy.iterations; ++it) {
    if (it > 0) {
      const RemeshIteration& last = out.back();
      if (!last.estimates.empty()) {
        current = current.with_mesh(
            refine_mesh(current.mesh(), last.estimates, policy.window_halfwidth_steps));
      }
    }
    iteration_params.seed = derive_seed(params.seed, 0x5eed0000ULL + it);

    RemeshIteration iteration{current.mesh().position_step(), current.mesh().lambda_step(),
                              current.mesh(), {}, run_events(current, iteration_params, options), 0.0};
    for (const CrackStatistics& s : iteration.run.cracks) {
      iteration.estimates.push_back({s.position.mean, s.flexibility.mean});
    }
    iteration.best_objective = objective(iteration.run.best_chromosome, current);
    out.push_back(std::move(iteration));
  }
  return out;
}

}  // namespace crackid
