#include "crackid/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "crackid/error.hpp"

namespace crackid {

namespace {

constexpr double kConditionTolerance = 1e-10;

struct Interface {
  double position = 0.0;
  double flexibility = 0.0;  // 0 when no crack sits here
  double shear_jump = 0.0;   // sum of point loads here
  bool has_crack = false;
};

// Row of d-th derivative of [1, t, t^2, t^3] at t.
std::array<double, 4> monomial_row(double x, int d) {
  switch (d) {
    case 0:
      return {1.0, x, x * x, x * x * x};
    case 1:
      return {0.0, 1.0, 2.0 * x, 3.0 * x * x};
    case 2:
      return {0.0, 0.0, 2.0, 6.0 * x};
    default:
      return {0.0, 0.0, 0.0, 6.0};
  }
}

// d-th derivative of the particular solution q0 t^4 / 24.
double particular(double q0, double x, int d) {
  switch (d) {
    case 0:
      return q0 * x * x * x * x / 24.0;
    case 1:
      return q0 * x * x * x / 6.0;
    case 2:
      return q0 * x * x / 2.0;
    default:
      return q0 * x;
  }
}

}  // namespace

ContinuityOracle::ContinuityOracle(const BeamProblem& problem) : uniform_(problem.load().uniform()) {
  const CrackSet& cracks = problem.cracks();
  if (cracks.size() > kMaxCracks) {
    throw ValidationError("continuity oracle supports at most 8 cracks");
  }

  std::vector<Interface> interfaces;
  for (const Crack& c : cracks) {
    interfaces.push_back({c.position, c.flexibility, 0.0, true});
  }
  for (const PointLoad& f : problem.load().point_loads()) {
    auto it = std::find_if(interfaces.begin(), interfaces.end(),
                           [&](const Interface& i) { return i.position == f.position; });
    if (it != interfaces.end()) {
      it->shear_jump += f.intensity;
    } else {
      interfaces.push_back({f.position, 0.0, f.intensity, false});
    }
  }
  std::sort(interfaces.begin(), interfaces.end(),
            [](const Interface& a, const Interface& b) { return a.position < b.position; });
  // Ends are anchored in different segments, so an intact beam gets a
  // neutral interface.
  if (interfaces.empty()) interfaces.push_back({0.5, 0.0, 0.0, false});

  const std::size_t n_seg = interfaces.size() + 1;
  const auto n = static_cast<Eigen::Index>(4 * n_seg);
  const Eigen::Index m = n - 4;  // interface rows
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  Eigen::Index row = 0;

  // Each segment is expanded in t = xi - anchor; the last one about xi = 1.
  std::vector<double> anchor(n_seg, 1.0);
  for (std::size_t s = 0; s + 1 < n_seg; ++s) anchor[s] = s == 0 ? 0.0 : interfaces[s - 1].position;

  // Adds sign * (d-th derivative of segment s at x) to row r; the particular
  // part goes to the right-hand side.
  auto put = [&](Eigen::Index r, std::size_t s, double x, int d, double sign) {
    const double t = x - anchor[s];
    const auto m = monomial_row(t, d);
    for (int k = 0; k < 4; ++k) A(r, static_cast<Eigen::Index>(4 * s) + k) += sign * m[k];
    b(r) -= sign * particular(uniform_, t, d);
  };

  // Both ends sit at t = 0 of their segment, where the d-th derivative is
  // d! times coefficient d alone, so each end condition fixes one coefficient
  // to zero; those unknowns are eliminated rather than solved for.
  std::vector<Eigen::Index> fixed;
  auto boundary = [&](std::size_t s, int d) { fixed.push_back(static_cast<Eigen::Index>(4 * s) + d); };

  switch (problem.boundary()) {
    case BoundaryCondition::PinnedPinned:
      boundary(0, 0);
      boundary(0, 2);
      boundary(n_seg - 1, 0);
      boundary(n_seg - 1, 2);
      break;
    case BoundaryCondition::ClampedClamped:
      boundary(0, 0);
      boundary(0, 1);
      boundary(n_seg - 1, 0);
      boundary(n_seg - 1, 1);
      break;
    case BoundaryCondition::Cantilever:
      boundary(0, 0);
      boundary(0, 1);
      boundary(n_seg - 1, 2);
      boundary(n_seg - 1, 3);
      break;
  }

  for (std::size_t k = 0; k < interfaces.size(); ++k) {
    const Interface& itf = interfaces[k];
    const std::size_t left = k;
    const std::size_t right = k + 1;
    const double x = itf.position;

    put(row, right, x, 0, 1.0);  // [u] = 0
    put(row, left, x, 0, -1.0);
    ++row;

    // [u'] = lambda u''(x), u'' taken from the left (it is continuous)
    put(row, right, x, 1, 1.0);
    put(row, left, x, 1, -1.0);
    put(row, left, x, 2, -itf.flexibility);
    ++row;

    put(row, right, x, 2, 1.0);  // [u''] = 0
    put(row, left, x, 2, -1.0);
    ++row;

    put(row, right, x, 3, 1.0);  // [u'''] = F
    put(row, left, x, 3, -1.0);
    b(row) += itf.shear_jump;
    ++row;
  }

  std::vector<Eigen::Index> free;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::find(fixed.begin(), fixed.end(), j) == fixed.end()) free.push_back(j);
  }
  Eigen::MatrixXd R(m, m);
  for (Eigen::Index j = 0; j < m; ++j) R.col(j) = A.col(free[static_cast<std::size_t>(j)]);

  // Scale rows to unit infinity norm so rcond reflects geometry, not units.
  for (Eigen::Index r = 0; r < m; ++r) {
    const double scale = R.row(r).lpNorm<Eigen::Infinity>();
    if (scale > 0.0) {
      R.row(r) /= scale;
      b(r) /= scale;
    }
  }

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(R);
  if (!(lu.rcond() > kConditionTolerance)) {
    throw NumericalError("continuity system is singular (rcond " + std::to_string(lu.rcond()) + ")");
  }
  const Eigen::VectorXd reduced = lu.solve(b);
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < m; ++j) a(free[static_cast<std::size_t>(j)]) = reduced(j);

  segments_.resize(n_seg);
  for (std::size_t s = 0; s < n_seg; ++s) {
    segments_[s].start = s == 0 ? 0.0 : interfaces[s - 1].position;
    segments_[s].anchor = anchor[s];
    for (int k = 0; k < 4; ++k) segments_[s].coeff[k] = a(static_cast<Eigen::Index>(4 * s) + k);
  }
  for (std::size_t k = 0; k < interfaces.size(); ++k) {
    if (interfaces[k].has_crack) crack_boundary_.push_back(k + 1);
  }
}

std::size_t ContinuityOracle::segment_of(double xi) const {
  // Last segment whose start is <= xi (matches U(0) = 1 at interfaces).
  auto it = std::upper_bound(segments_.begin(), segments_.end(), xi,
                             [](double x, const Segment& s) { return x < s.start; });
  return static_cast<std::size_t>(std::distance(segments_.begin(), it)) - 1;
}

double ContinuityOracle::evaluate(const Segment& s, double xi, int d) const {
  const double t = xi - s.anchor;
  const auto m = monomial_row(t, d);
  double v = particular(uniform_, t, d);
  for (int k = 0; k < 4; ++k) v += s.coeff[k] * m[k];
  return v;
}

double ContinuityOracle::deflection(double xi) const {
  return evaluate(segments_[segment_of(xi)], xi, 0);
}

double ContinuityOracle::slope_jump(std::size_t crack_index) const {
  if (crack_index >= crack_boundary_.size()) throw ValidationError("crack index out of range");
  const std::size_t right = crack_boundary_[crack_index];
  const double x = segments_[right].start;
  return evaluate(segments_[right], x, 1) - evaluate(segments_[right - 1], x, 1);
}

double oracle_deflection(const BeamProblem& problem, double xi) {
  return ContinuityOracle(problem).deflection(xi);
}

}  // namespace crackid
