#pragma once

#include "crackid/beam.hpp"

namespace crackid {

/// Piecewise-polynomial reference solution obtained the classical way:
/// one cubic (plus the uniform-load quartic) per segment between cracks and
/// point loads, glued by continuity of u, u'', u''' with the slope jump
/// lambda_i u''(xi_i) at cracks and the shear jump F_r at point loads.
///
/// Independent of the closed form and only meant for verification; limited
/// to 8 cracks.
class ContinuityOracle {
 public:
  static constexpr std::size_t kMaxCracks = 8;

  /// Throws ValidationError for more than kMaxCracks cracks and
  /// NumericalError when the assembled system is numerically singular.
  explicit ContinuityOracle(const BeamProblem& problem);

  double deflection(double xi) const;

  /// Slope jump recovered from the segment coefficients on either side of crack i.
  double slope_jump(std::size_t crack_index) const;

 private:
  struct Segment {
    double start = 0.0;
    double anchor = 0.0;
    std::array<double, 4> coeff{};  // in t = xi - anchor
  };

  std::size_t segment_of(double xi) const;
  double evaluate(const Segment& s, double xi, int d) const;

  double uniform_ = 0.0;
  std::vector<Segment> segments_;
  std::vector<std::size_t> crack_boundary_;  // segment index starting at each crack
};

double oracle_deflection(const BeamProblem& problem, double xi);

}  // namespace crackid
