#pragma once

// Closed-form static deflection of an Euler-Bernoulli beam with concentrated
// cracks modelled as rotational springs.
//
// Everything is dimensionless: abscissa xi = x/L, flexibility
// lambda = E0 I0 / (k L), load q = q_bar L^3 / (E0 I0), point load
// F = F_bar L^2 / (E0 I0). The governing equation is u'''' = q with a slope
// jump lambda_i * u''(xi_i) at every crack, so a positive load produces a
// positive deflection.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace crackid {

enum class BoundaryCondition {
  PinnedPinned,
  ClampedClamped,
  Cantilever,  ///< clamped at xi = 0, free at xi = 1
};

std::string_view to_string(BoundaryCondition bc);

/// Accepts "pinned-pinned", "clamped-clamped", "cantilever" (case-insensitive,
/// '_' and '-' interchangeable). Throws ValidationError otherwise.
BoundaryCondition parse_boundary_condition(std::string_view name);

struct Crack {
  double position = 0.0;
  double flexibility = 0.0;

  friend bool operator==(const Crack&, const Crack&) = default;
};

/// Cracks ordered by strictly increasing position inside (0, 1), each with a
/// non-negative flexibility. A zero flexibility is equivalent to no crack.
class CrackSet {
 public:
  CrackSet() = default;

  /// Sorts by position, then validates. Throws ValidationError on duplicate
  /// positions, positions outside (0, 1) or negative flexibility.
  explicit CrackSet(std::vector<Crack> cracks);

  std::span<const Crack> cracks() const noexcept { return cracks_; }
  std::size_t size() const noexcept { return cracks_.size(); }
  bool empty() const noexcept { return cracks_.empty(); }
  const Crack& operator[](std::size_t i) const { return cracks_[i]; }
  auto begin() const noexcept { return cracks_.begin(); }
  auto end() const noexcept { return cracks_.end(); }

  friend bool operator==(const CrackSet&, const CrackSet&) = default;

 private:
  std::vector<Crack> cracks_;
};

struct PointLoad {
  double intensity = 0.0;
  double position = 0.0;

  friend bool operator==(const PointLoad&, const PointLoad&) = default;
};

/// Uniform load q0 plus concentrated loads F_r at xi_Fr in (0, 1).
class LoadCase {
 public:
  LoadCase() = default;
  explicit LoadCase(double uniform, std::vector<PointLoad> point_loads = {});

  double uniform() const noexcept { return uniform_; }
  std::span<const PointLoad> point_loads() const noexcept { return point_loads_; }

  LoadCase scaled(double factor) const;

  friend bool operator==(const LoadCase&, const LoadCase&) = default;

 private:
  double uniform_ = 0.0;
  std::vector<PointLoad> point_loads_;
};

class BeamProblem {
 public:
  BeamProblem(BoundaryCondition bc, CrackSet cracks, LoadCase load)
      : bc_(bc), cracks_(std::move(cracks)), load_(std::move(load)) {}

  BoundaryCondition boundary() const noexcept { return bc_; }
  const CrackSet& cracks() const noexcept { return cracks_; }
  const LoadCase& load() const noexcept { return load_; }

 private:
  BoundaryCondition bc_;
  CrackSet cracks_;
  LoadCase load_;
};

/// p-th antiderivative q^[p](xi) of the load, p in {2, 3, 4}, with every
/// integration constant zero at xi = 0 and Heaviside U(0) = 1.
double load_integral(const LoadCase& load, double xi, int p);

/// d-th classical derivative (Dirac terms dropped) of basis function f_j,
/// j in 1..5, d in 0..3.
double basis_f(int j, int d, double xi, const CrackSet& cracks, const LoadCase& load);

struct IntegrationConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
};

/// Constants of u = c1 f1 + c2 f2 + c3 f3 + c4 f4 + f5 for the problem's
/// boundary condition. Throws NumericalError on a vanishing denominator.
IntegrationConstants integration_constants(const BeamProblem& problem);

/// A problem together with its resolved constants and per-crack slope jumps.
///
/// Expanding f3, f4 and f5 shows that every crack contributes
/// lambda_i * (2 c3 + 6 c4 xi_i + q^[2](xi_i)) * (xi - xi_i) U(xi - xi_i),
/// i.e. its slope jump times a ramp; the evaluation below uses that form.
class BeamSolution {
 public:
  explicit BeamSolution(BeamProblem problem);

  const BeamProblem& problem() const noexcept { return problem_; }
  const IntegrationConstants& constants() const noexcept { return constants_; }

  double deflection(double xi) const;

  /// Classical derivative of order d in 0..3.
  double derivative(double xi, int d) const;

  /// Slope discontinuity lambda_i * u''(xi_i) at crack i.
  double rotation_jump(std::size_t i) const;

  std::span<const double> rotation_jumps() const noexcept { return jumps_; }

 private:
  BeamProblem problem_;
  IntegrationConstants constants_;
  std::vector<double> jumps_;
  double tail_start_ = 1.0;           // last crack or point load
  std::array<double, 4> tail_{};      // u, u', u'', u''' at xi = 1
};

double deflection(const BeamProblem& problem, double xi);

std::vector<double> deflections(const BeamProblem& problem, std::span<const double> xs);

double rotation_jump(const BeamProblem& problem, std::size_t i);

}  // namespace crackid
