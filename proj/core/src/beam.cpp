#include "crackid/beam.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "crackid/error.hpp"

namespace crackid {

namespace {

constexpr double kDegenerateDenominator = 1e-14;

double heaviside(double x) { return x >= 0.0 ? 1.0 : 0.0; }

// q^[p] for p in 1..4; p = 1 is only needed for f5'''.
double antiderivative(const LoadCase& load, double xi, int p) {
  static constexpr std::array<double, 5> kFactorial = {1.0, 1.0, 2.0, 6.0, 24.0};
  double value = load.uniform() * std::pow(xi, p) / kFactorial[p];
  for (const PointLoad& f : load.point_loads()) {
    const double t = xi - f.position;
    if (t < 0.0) continue;
    value += f.intensity * std::pow(t, p - 1) / kFactorial[p - 1];
  }
  return value;
}

std::string normalise_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    if (c == '_' || c == ' ') c = '-';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

void check_denominator(double value, std::string_view what) {
  if (std::abs(value) < kDegenerateDenominator) {
    throw NumericalError("degenerate configuration: " + std::string(what) +
                         " denominator vanishes");
  }
}

}  // namespace

std::string_view to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::PinnedPinned:
      return "pinned-pinned";
    case BoundaryCondition::ClampedClamped:
      return "clamped-clamped";
    case BoundaryCondition::Cantilever:
      return "cantilever";
  }
  return "unknown";
}

BoundaryCondition parse_boundary_condition(std::string_view name) {
  const std::string key = normalise_name(name);
  if (key == "pinned-pinned" || key == "simply-supported") return BoundaryCondition::PinnedPinned;
  if (key == "clamped-clamped") return BoundaryCondition::ClampedClamped;
  if (key == "cantilever") return BoundaryCondition::Cantilever;
  throw ValidationError("unknown boundary condition '" + std::string(name) +
                        "' (expected pinned-pinned, clamped-clamped or cantilever)");
}

CrackSet::CrackSet(std::vector<Crack> cracks) : cracks_(std::move(cracks)) {
  auto by_position = [](const Crack& a, const Crack& b) { return a.position < b.position; };
  if (!std::is_sorted(cracks_.begin(), cracks_.end(), by_position)) {
    std::sort(cracks_.begin(), cracks_.end(), by_position);
  }
  for (std::size_t i = 0; i < cracks_.size(); ++i) {
    const Crack& c = cracks_[i];
    if (!(c.position > 0.0 && c.position < 1.0)) {
      throw ValidationError("crack position " + std::to_string(c.position) +
                            " outside (0, 1)");
    }
    if (!(c.flexibility >= 0.0) || !std::isfinite(c.flexibility)) {
      throw ValidationError("crack flexibility " + std::to_string(c.flexibility) +
                            " must be finite and >= 0");
    }
    if (i > 0 && cracks_[i - 1].position == c.position) {
      throw ValidationError("duplicate crack position " + std::to_string(c.position));
    }
  }
}

LoadCase::LoadCase(double uniform, std::vector<PointLoad> point_loads)
    : uniform_(uniform), point_loads_(std::move(point_loads)) {
  if (!std::isfinite(uniform_)) throw ValidationError("uniform load must be finite");
  for (const PointLoad& f : point_loads_) {
    if (!(f.position > 0.0 && f.position < 1.0)) {
      throw ValidationError("point load position " + std::to_string(f.position) +
                            " outside (0, 1)");
    }
    if (!std::isfinite(f.intensity)) throw ValidationError("point load must be finite");
  }
}

LoadCase LoadCase::scaled(double factor) const {
  std::vector<PointLoad> loads(point_loads_.begin(), point_loads_.end());
  for (PointLoad& f : loads) f.intensity *= factor;
  return LoadCase(uniform_ * factor, std::move(loads));
}

double load_integral(const LoadCase& load, double xi, int p) {
  if (p < 2 || p > 4) {
    throw ValidationError("load_integral order must be 2, 3 or 4 (got " + std::to_string(p) + ")");
  }
  return antiderivative(load, xi, p);
}

double basis_f(int j, int d, double xi, const CrackSet& cracks, const LoadCase& load) {
  if (j < 1 || j > 5) throw ValidationError("basis function index must be in 1..5");
  if (d < 0 || d > 3) throw ValidationError("derivative order must be in 0..3");

  switch (j) {
    case 1:
      return d == 0 ? 1.0 : 0.0;
    case 2:
      return d == 0 ? xi : (d == 1 ? 1.0 : 0.0);
    case 3: {
      if (d >= 2) return d == 2 ? 2.0 : 0.0;
      double value = d == 0 ? xi * xi : 2.0 * xi;
      for (const Crack& c : cracks) {
        const double t = xi - c.position;
        value += 2.0 * c.flexibility * (d == 0 ? t : 1.0) * heaviside(t);
      }
      return value;
    }
    case 4: {
      if (d >= 2) return d == 2 ? 6.0 * xi : 6.0;
      double value = d == 0 ? xi * xi * xi : 3.0 * xi * xi;
      for (const Crack& c : cracks) {
        const double t = xi - c.position;
        value += 6.0 * c.flexibility * c.position * (d == 0 ? t : 1.0) * heaviside(t);
      }
      return value;
    }
    default: {
      if (d >= 2) return antiderivative(load, xi, 4 - d);
      double value = antiderivative(load, xi, 4 - d);
      for (const Crack& c : cracks) {
        const double t = xi - c.position;
        const double moment = antiderivative(load, c.position, 2);
        value += c.flexibility * moment * (d == 0 ? t : 1.0) * heaviside(t);
      }
      return value;
    }
  }
}

IntegrationConstants integration_constants(const BeamProblem& problem) {
  const CrackSet& cracks = problem.cracks();
  const LoadCase& load = problem.load();
  auto f = [&](int j, int d) { return basis_f(j, d, 1.0, cracks, load); };

  IntegrationConstants c;
  switch (problem.boundary()) {
    case BoundaryCondition::PinnedPinned: {
      const double f4dd = f(4, 2);
      check_denominator(f4dd, "pinned-pinned");
      const double ratio = f(5, 2) / f4dd;
      c.c2 = ratio * f(4, 0) - f(5, 0);
      c.c4 = -ratio;
      break;
    }
    case BoundaryCondition::ClampedClamped: {
      const double f3 = f(3, 0), f3d = f(3, 1);
      const double f4 = f(4, 0), f4d = f(4, 1);
      const double f5 = f(5, 0), f5d = f(5, 1);
      const double den = f3 * f4d - f3d * f4;
      check_denominator(den, "clamped-clamped");
      c.c3 = (f5d * f4 - f5 * f4d) / den;
      c.c4 = (f3d * f5 - f3 * f5d) / den;
      break;
    }
    case BoundaryCondition::Cantilever: {
      const double f3dd = f(3, 2), f3ddd = f(3, 3);
      const double f4dd = f(4, 2), f4ddd = f(4, 3);
      const double f5dd = f(5, 2), f5ddd = f(5, 3);
      const double den = f3dd * f4ddd - f3ddd * f4dd;
      check_denominator(den, "cantilever");
      c.c3 = (f5ddd * f4dd - f5dd * f4ddd) / den;
      c.c4 = (f5dd * f3ddd - f5ddd * f3dd) / den;
      break;
    }
  }
  return c;
}

BeamSolution::BeamSolution(BeamProblem problem)
    : problem_(std::move(problem)), constants_(integration_constants(problem_)) {
  const CrackSet& cracks = problem_.cracks();
  jumps_.reserve(cracks.size());
  for (const Crack& c : cracks) {
    const double curvature = 2.0 * constants_.c3 + 6.0 * constants_.c4 * c.position +
                             antiderivative(problem_.load(), c.position, 2);
    jumps_.push_back(c.flexibility * curvature);
  }

  // Beyond the last discontinuity u is evaluated as a quartic about xi = 1
  // with the prescribed end values exactly zero (avoids cancellation there).
  tail_start_ = 0.5;
  for (const Crack& c : cracks) tail_start_ = std::max(tail_start_, c.position);
  for (const PointLoad& f : problem_.load().point_loads()) {
    tail_start_ = std::max(tail_start_, f.position);
  }
  for (int d = 0; d < 4; ++d) tail_[d] = derivative(1.0, d);
  switch (problem_.boundary()) {
    case BoundaryCondition::PinnedPinned:
      tail_[0] = tail_[2] = 0.0;
      break;
    case BoundaryCondition::ClampedClamped:
      tail_[0] = tail_[1] = 0.0;
      break;
    case BoundaryCondition::Cantilever:
      tail_[2] = tail_[3] = 0.0;
      break;
  }
}

double BeamSolution::deflection(double xi) const {
  if (xi > tail_start_) {
    const double t = xi - 1.0;
    return tail_[0] +
           t * (tail_[1] + t * (tail_[2] / 2.0 +
                                t * (tail_[3] / 6.0 + t * problem_.load().uniform() / 24.0)));
  }
  return derivative(xi, 0);
}

double BeamSolution::derivative(double xi, int d) const {
  const IntegrationConstants& c = constants_;
  const LoadCase& load = problem_.load();
  switch (d) {
    case 0: {
      double u = c.c1 + xi * (c.c2 + xi * (c.c3 + xi * c.c4)) + antiderivative(load, xi, 4);
      const CrackSet& cracks = problem_.cracks();
      for (std::size_t i = 0; i < cracks.size(); ++i) {
        const double t = xi - cracks[i].position;
        if (t < 0.0) break;
        u += jumps_[i] * t;
      }
      return u;
    }
    case 1: {
      double du = c.c2 + xi * (2.0 * c.c3 + 3.0 * c.c4 * xi) + antiderivative(load, xi, 3);
      const CrackSet& cracks = problem_.cracks();
      for (std::size_t i = 0; i < cracks.size(); ++i) {
        if (xi < cracks[i].position) break;
        du += jumps_[i];
      }
      return du;
    }
    case 2:
      return 2.0 * c.c3 + 6.0 * c.c4 * xi + antiderivative(load, xi, 2);
    case 3:
      return 6.0 * c.c4 + antiderivative(load, xi, 1);
    default:
      throw ValidationError("derivative order must be in 0..3");
  }
}

double BeamSolution::rotation_jump(std::size_t i) const {
  if (i >= jumps_.size()) throw ValidationError("crack index out of range");
  return jumps_[i];
}

double deflection(const BeamProblem& problem, double xi) {
  return BeamSolution(problem).deflection(xi);
}

std::vector<double> deflections(const BeamProblem& problem, std::span<const double> xs) {
  const BeamSolution solution(problem);
  std::vector<double> out;
  out.reserve(xs.size());
  for (double xi : xs) out.push_back(solution.deflection(xi));
  return out;
}

double rotation_jump(const BeamProblem& problem, std::size_t i) {
  return BeamSolution(problem).rotation_jump(i);
}

}  // namespace crackid
