#include <doctest.h>

#include <cmath>
#include <random>

#include "crackid/beam.hpp"
#include "crackid/error.hpp"
#include "crackid/oracle.hpp"
#include "support/random_problems.hpp"

using namespace crackid;

namespace {

BeamProblem single_crack_pinned() {
  return BeamProblem(BoundaryCondition::PinnedPinned, CrackSet({{0.6, 0.07}}), LoadCase(50.0));
}

BeamProblem two_crack_cantilever() {
  return BeamProblem(BoundaryCondition::Cantilever, CrackSet({{0.2, 0.02}, {0.4, 0.04}}),
                     LoadCase(50.0));
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-12); }

}  // namespace

TEST_CASE("crack set validation") {
  CHECK_THROWS_AS(CrackSet({{0.0, 0.1}}), ValidationError);
  CHECK_THROWS_AS(CrackSet({{1.0, 0.1}}), ValidationError);
  CHECK_THROWS_AS(CrackSet({{0.5, -0.1}}), ValidationError);
  CHECK_THROWS_AS(CrackSet({{0.5, 0.1}, {0.5, 0.2}}), ValidationError);

  const CrackSet sorted({{0.7, 0.1}, {0.2, 0.05}});
  CHECK(sorted[0].position == 0.2);
  CHECK(sorted[1].position == 0.7);
  CHECK_THROWS_AS(LoadCase(1.0, {{1.0, 1.0}}), ValidationError);
}

TEST_CASE("boundary condition names") {
  CHECK(parse_boundary_condition("Pinned_Pinned") == BoundaryCondition::PinnedPinned);
  CHECK(parse_boundary_condition("clamped-clamped") == BoundaryCondition::ClampedClamped);
  CHECK(parse_boundary_condition(to_string(BoundaryCondition::Cantilever)) ==
        BoundaryCondition::Cantilever);
  CHECK_THROWS_AS(parse_boundary_condition("free-free"), ValidationError);
}

TEST_CASE("load_integral") {
  CHECK(load_integral(LoadCase(50.0), 0.5, 4) == doctest::Approx(50.0 * 0.0625 / 24.0).epsilon(1e-15));
  const LoadCase point(0.0, {{1.0, 0.5}});
  CHECK(load_integral(point, 1.0, 4) == doctest::Approx(0.125 / 6.0).epsilon(1e-15));
  CHECK(load_integral(point, 0.4, 2) == 0.0);
  // U(0) = 1, but the ramp is zero there anyway
  CHECK(load_integral(point, 0.5, 2) == 0.0);
  CHECK(load_integral(point, 0.5, 3) == 0.0);
  CHECK_THROWS_AS(load_integral(point, 0.5, 1), ValidationError);
  CHECK_THROWS_AS(load_integral(point, 0.5, 5), ValidationError);
}

TEST_CASE("basis_f") {
  const CrackSet one({{0.5, 0.1}});
  const LoadCase none;
  CHECK(basis_f(3, 0, 0.75, one, none) == doctest::Approx(0.6125).epsilon(1e-15));
  CHECK(basis_f(4, 2, 1.0, CrackSet{}, none) == 6.0);
  CHECK(basis_f(2, 1, 0.3, one, none) == 1.0);
  CHECK(basis_f(1, 0, 0.3, one, none) == 1.0);
  CHECK(basis_f(1, 2, 0.3, one, none) == 0.0);
  CHECK_THROWS_AS(basis_f(0, 0, 0.3, one, none), ValidationError);
  CHECK_THROWS_AS(basis_f(6, 0, 0.3, one, none), ValidationError);
  CHECK_THROWS_AS(basis_f(3, 4, 0.3, one, none), ValidationError);

  SUBCASE("first derivatives match central differences away from cracks") {
    const CrackSet cracks({{0.3, 0.05}, {0.6, 0.08}});
    const LoadCase load(20.0, {{3.0, 0.45}});
    const double h = 1e-5;
    for (int j = 1; j <= 5; ++j) {
      for (double xi : {0.1, 0.4, 0.5, 0.8}) {
        for (int d = 0; d < 3; ++d) {
          const double fd = (basis_f(j, d, xi + h, cracks, load) - basis_f(j, d, xi - h, cracks, load)) / (2 * h);
          CHECK(basis_f(j, d + 1, xi, cracks, load) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("integration_constants") {
  SUBCASE("pinned-pinned uniform load, no cracks") {
    const auto c = integration_constants(BeamProblem(BoundaryCondition::PinnedPinned, {}, LoadCase(50.0)));
    CHECK(c.c1 == 0.0);
    CHECK(c.c3 == 0.0);
    CHECK(c.c4 == doctest::Approx(-50.0 / 12.0).epsilon(1e-15));
    CHECK(c.c2 == doctest::Approx(50.0 / 24.0).epsilon(1e-15));
  }
  SUBCASE("clamped-clamped end conditions") {
    const BeamProblem p(BoundaryCondition::ClampedClamped, {}, LoadCase(7.0, {{2.0, 0.3}}));
    const BeamSolution s(p);
    CHECK(s.constants().c1 == 0.0);
    CHECK(s.constants().c2 == 0.0);
    CHECK(std::abs(s.derivative(1.0, 0)) < 1e-14);
    CHECK(std::abs(s.derivative(1.0, 1)) < 1e-14);
  }
  SUBCASE("cantilever tip under uniform load") {
    CHECK(deflection(BeamProblem(BoundaryCondition::Cantilever, {}, LoadCase(50.0)), 1.0) ==
          doctest::Approx(6.25).epsilon(1e-14));
  }
}

TEST_CASE("deflection reference values") {
  const BeamProblem p = single_crack_pinned();
  CHECK(std::abs(deflection(p, 0.1) - 0.221175) < 5e-7);
  CHECK(std::abs(deflection(p, 0.9) - 0.229575) < 5e-7);
  CHECK(deflection(BeamProblem(BoundaryCondition::PinnedPinned, {}, LoadCase(50.0)), 0.5) ==
        doctest::Approx(5.0 * 50.0 / 384.0).epsilon(1e-14));

  SUBCASE("point load case used for remeshing") {
    const BeamProblem q(BoundaryCondition::PinnedPinned, CrackSet({{0.57143, 0.086785}}),
                        LoadCase(0.0, {{0.00175, 0.7143}}));
    CHECK(deflection(q, 0.14286) == doctest::Approx(1.22e-5).epsilon(1e-3));
    CHECK(deflection(q, 0.85714) == doctest::Approx(1.6e-5).epsilon(1e-3));
    CHECK(deflection(q, 0.5) == doctest::Approx(3.316e-5).epsilon(1e-3));
  }

  SUBCASE("two-crack cantilever, clamped at 0 and free at 1") {
    // Frozen from an independent re-derivation of the end-condition formulas.
    const BeamProblem c = two_crack_cantilever();
    CHECK(deflection(c, 0.25) == doctest::Approx(0.6751796875).epsilon(1e-12));
    CHECK(deflection(c, 0.35) == doctest::Approx(1.2532213541666666).epsilon(1e-12));
    CHECK(deflection(c, 0.65) == doctest::Approx(3.5985963541666672).epsilon(1e-12));
    CHECK(deflection(c, 0.95) == doctest::Approx(6.271346354166665).epsilon(1e-12));
  }

  SUBCASE("f5 alone gives the zero-constant profile") {
    // All four end conditions imposed at xi = 0 leave u = f5.
    const BeamProblem c = two_crack_cantilever();
    const double values[] = {0.00913802, 0.03426302, 0.42088802, 1.79988802};
    const double xs[] = {0.25, 0.35, 0.65, 0.95};
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(basis_f(5, 0, xs[i], c.cracks(), c.load()) - values[i]) < 5e-8);
    }
  }
}

TEST_CASE("deflection equals the basis-function sum") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const BeamProblem p = testing::random_problem(rng);
    const auto c = integration_constants(p);
    const BeamSolution s(p);
    for (double xi : {0.0, 0.13, 0.5, 0.77, 1.0}) {
      const auto f = [&](int j) { return basis_f(j, 0, xi, p.cracks(), p.load()); };
      const double direct = c.c1 * f(1) + c.c2 * f(2) + c.c3 * f(3) + c.c4 * f(4) + f(5);
      CHECK(std::abs(s.deflection(xi) - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("rotation_jump") {
  const BeamProblem p = single_crack_pinned();
  const BeamSolution s(p);
  const double probe = testing::slope_jump_probe([&](double x) { return s.deflection(x); }, 0.6);
  CHECK(std::abs(s.rotation_jump(0) - probe) <= 1e-9);
  CHECK(s.rotation_jump(0) < 0.0);  // sagging beam: the crack adds a kink
  CHECK_THROWS_AS(s.rotation_jump(1), ValidationError);

  const BeamProblem zero(BoundaryCondition::PinnedPinned, CrackSet({{0.6, 0.0}}), LoadCase(50.0));
  CHECK(rotation_jump(zero, 0) == 0.0);

  SUBCASE("agrees with the continuity oracle's interface jump") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      const BeamProblem q = testing::random_problem(rng);
      const BeamSolution sol(q);
      const ContinuityOracle oracle(q);
      for (std::size_t i = 0; i < q.cracks().size(); ++i) {
        const double a = sol.rotation_jump(i);
        CHECK(std::abs(a - oracle.slope_jump(i)) <= 1e-9 * std::abs(a) + 1e-14);
      }
    }
  }
}

TEST_CASE("continuity oracle") {
  CHECK(oracle_deflection(BeamProblem(BoundaryCondition::PinnedPinned, {}, LoadCase(50.0)), 0.5) ==
        doctest::Approx(50.0 * 5.0 / 384.0).epsilon(1e-13));
  CHECK(std::abs(oracle_deflection(single_crack_pinned(), 0.1) - 0.221175) < 5e-7);

  std::vector<Crack> many;
  for (int i = 1; i <= 9; ++i) many.push_back({i / 10.0, 0.01});
  CHECK_THROWS_AS(ContinuityOracle(BeamProblem(BoundaryCondition::PinnedPinned, CrackSet(many), LoadCase(1.0))),
                  ValidationError);

  SUBCASE("crack and point load at the same abscissa") {
    const BeamProblem p(BoundaryCondition::ClampedClamped, CrackSet({{0.4, 0.05}}),
                        LoadCase(0.0, {{1.0, 0.4}}));
    for (double xi : {0.1, 0.4, 0.7}) {
      CHECK(rel(deflection(p, xi), oracle_deflection(p, xi)) <= 1e-10);
    }
  }

  SUBCASE("randomised differential test") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const BeamProblem p = testing::random_problem(rng);
      const BeamSolution closed(p);
      const ContinuityOracle oracle(p);
      for (int k = 0; k < 20; ++k) {
        const double xi = unit(rng);
        worst = std::max(worst, rel(oracle.deflection(xi), closed.deflection(xi)));
      }
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("closed-form invariants over random problems") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const BeamProblem p = testing::random_problem(rng);
    const BeamSolution s(p);
    CAPTURE(trial);

    // end conditions
    const double scale = std::max(1.0, std::abs(s.deflection(0.5)));
    switch (p.boundary()) {
      case BoundaryCondition::PinnedPinned:
        CHECK(std::abs(s.derivative(0.0, 0)) <= 1e-12 * scale);
        CHECK(std::abs(s.derivative(0.0, 2)) <= 1e-12 * scale);
        CHECK(std::abs(s.derivative(1.0, 0)) <= 1e-12 * scale);
        CHECK(std::abs(s.derivative(1.0, 2)) <= 1e-12 * scale);
        break;
      case BoundaryCondition::ClampedClamped:
        CHECK(std::abs(s.derivative(0.0, 0)) <= 1e-12 * scale);
        CHECK(std::abs(s.derivative(0.0, 1)) <= 1e-12 * scale);
        CHECK(std::abs(s.derivative(1.0, 0)) <= 1e-12 * scale);
        CHECK(std::abs(s.derivative(1.0, 1)) <= 1e-12 * scale);
        break;
      case BoundaryCondition::Cantilever:
        CHECK(std::abs(s.derivative(0.0, 0)) <= 1e-12 * scale);
        CHECK(std::abs(s.derivative(0.0, 1)) <= 1e-12 * scale);
        CHECK(std::abs(s.derivative(1.0, 2)) <= 1e-12 * scale);
        CHECK(std::abs(s.derivative(1.0, 3)) <= 1e-12 * scale);
        break;
    }

    // zero-flexibility cracks change nothing
    std::vector<Crack> inert;
    for (const Crack& c : p.cracks()) inert.push_back({c.position, 0.0});
    const BeamSolution with_inert(BeamProblem(p.boundary(), CrackSet(inert), p.load()));
    const BeamSolution bare(BeamProblem(p.boundary(), CrackSet{}, p.load()));
    for (double xi : {0.05, 0.33, 0.5, 0.91}) {
      CHECK(std::abs(with_inert.deflection(xi) - bare.deflection(xi)) <= 1e-14);
    }

    // continuity and slope jump at every crack
    for (std::size_t i = 0; i < p.cracks().size(); ++i) {
      const double x = p.cracks()[i].position;
      // one-sided limits by linear extrapolation from x +/- 1e-9, 2e-9
      const double right = 2.0 * s.deflection(x + 1e-9) - s.deflection(x + 2e-9);
      const double left = 2.0 * s.deflection(x - 1e-9) - s.deflection(x - 2e-9);
      CHECK(std::abs(right - left) <= 1e-12 * scale);
      const double probe = testing::slope_jump_probe([&](double y) { return s.deflection(y); }, x);
      CHECK(std::abs(probe - s.rotation_jump(i)) <= 1e-6 * std::max(std::abs(s.rotation_jump(i)), 1.0));
    }

    // linear in the load
    const BeamSolution doubled(BeamProblem(p.boundary(), p.cracks(), p.load().scaled(-2.5)));
    for (double xi : {0.2, 0.6, 0.95}) {
      CHECK(rel(doubled.deflection(xi), -2.5 * s.deflection(xi)) <= 1e-12);
    }
  }
}

TEST_CASE("fourth differences reproduce the uniform load between discontinuities") {
  const BeamProblem p(BoundaryCondition::ClampedClamped, CrackSet({{0.3, 0.1}, {0.7, 0.05}}),
                      LoadCase(50.0, {{2.0, 0.5}}));
  const BeamSolution s(p);
  const double h = 1e-3;
  for (double x : {0.1, 0.2, 0.4, 0.6, 0.85}) {
    const double d4 = (s.deflection(x + 2 * h) - 4 * s.deflection(x + h) + 6 * s.deflection(x) -
                       4 * s.deflection(x - h) + s.deflection(x - 2 * h)) /
                      (h * h * h * h);
    CHECK(rel(d4, 50.0) <= 1e-4);
  }
}
