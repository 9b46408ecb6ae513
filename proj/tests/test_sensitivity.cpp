#include <doctest.h>

#include <cmath>
#include <vector>

#include "crackid/error.hpp"
#include "crackid/sensitivity.hpp"

using namespace crackid;

TEST_CASE("measurement placement") {
  const auto one = placement(1);
  REQUIRE(one.size() == 2);
  CHECK(one[0] == doctest::Approx(1.0 / 3.0));
  CHECK(one[1] == doctest::Approx(2.0 / 3.0));

  const auto two = placement(2);
  REQUIRE(two.size() == 4);
  CHECK(two[0] == doctest::Approx(2.0 / 9.0));
  CHECK(two[1] == doctest::Approx(4.0 / 9.0));
  CHECK(two[2] == doctest::Approx(5.0 / 9.0));
  CHECK(two[3] == doctest::Approx(7.0 / 9.0));

  for (std::size_t n = 1; n <= 12; ++n) {
    const auto p = placement(n);
    REQUIRE(p.size() == 2 * n);
    CHECK(p.front() > 0.0);
    CHECK(p.back() < 1.0);
    for (std::size_t k = 1; k < p.size(); ++k) CHECK(p[k] > p[k - 1]);
    for (std::size_t i = 1; i <= n; ++i) {
      const double crack = static_cast<double>(i) / static_cast<double>(n + 1);
      CHECK(p[2 * i - 2] < crack);
      CHECK(crack < p[2 * i - 1]);
    }
  }
  CHECK_THROWS_AS(placement(0), ValidationError);
}

TEST_CASE("additive uniform noise") {
  const MeasurementSet clean({{0.1, 0.2}, {0.5, 0.6}, {0.9, 0.2}});
  Rng rng(1);
  CHECK(corrupt(clean, 0.0, rng) == clean);

  Rng a(44), b(44);
  CHECK(corrupt(clean, 1e-3, a) == corrupt(clean, 1e-3, b));

  Rng r(45);
  double sum = 0.0;
  std::size_t n = 0;
  for (int t = 0; t < 34000; ++t) {
    const MeasurementSet noisy = corrupt(clean, 2.0, r);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(noisy[j].position == clean[j].position);
      const double d = noisy[j].displacement - clean[j].displacement;
      CHECK(std::abs(d) <= 2.0);
      sum += d;
      ++n;
    }
  }
  // U[-1, 1] scaled by 2 has variance 4/3
  const double sigma = std::sqrt(4.0 / 3.0 / static_cast<double>(n));
  CHECK(std::abs(sum / static_cast<double>(n)) <= 3.0 * sigma);
  CHECK_THROWS_AS(corrupt(clean, -1.0, r), ValidationError);
}

TEST_CASE("epsilon grid") {
  const auto g = epsilon_grid(1.5e-6, 7);
  REQUIRE(g.size() == 7);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.5e-6);
  CHECK(g[1] == doctest::Approx(0.25e-6));
}

TEST_CASE("relative errors of averaged identifications") {
  const auto zero = error_eta({0.57143, 0.086785}, {0.57143, 0.086785});
  CHECK(zero.position == 0.0);
  CHECK(zero.flexibility == 0.0);

  const auto e = error_eta({0.572, 0.086}, {0.57143, 0.086785});
  CHECK(e.position == doctest::Approx(0.00057 / 0.57143).epsilon(1e-9));
  CHECK(e.position == doctest::Approx(0.000997).epsilon(1e-3));
  CHECK(e.flexibility == doctest::Approx(0.000785 / 0.086785).epsilon(1e-9));

  // linear in the gap, symmetric in absolute value
  const auto e2 = error_eta({0.57143 + 2 * 0.00057, 0.086785}, {0.57143, 0.086785});
  CHECK(e2.position == doctest::Approx(2 * e.position).epsilon(1e-9));
  const auto e3 = error_eta({0.57143 - 0.00057, 0.086785}, {0.57143, 0.086785});
  CHECK(e3.position == doctest::Approx(e.position).epsilon(1e-9));

  CHECK_THROWS_AS(error_eta({0.5, 0.1}, {0.0, 0.1}), ValidationError);
  CHECK_THROWS_AS(error_eta({0.5, 0.1}, {0.5, 0.0}), ValidationError);
}

TEST_CASE("percent errors") {
  CHECK(err_pct({0.21, 0.05}, {0.25, 0.05}, 0.1).position == doctest::Approx(4.0));
  CHECK(err_pct({0.25, 0.03}, {0.25, 0.05}, 0.1).flexibility == doctest::Approx(20.0));
  const auto same = err_pct({0.4, 0.02}, {0.4, 0.02}, 0.1);
  CHECK(same.position == 0.0);
  CHECK(same.flexibility == 0.0);
  CHECK_THROWS_AS(err_pct({0.4, 0.02}, {0.4, 0.02}, 0.0), ValidationError);
}

TEST_CASE("measurement sweep") {
  SweepSetup setup;
  setup.load = LoadCase(50.0);
  setup.truth = CrackSet({{0.6, 0.07}});
  setup.mesh = Mesh::uniform(19, 0.1, 10);
  setup.fixed_position = 0.1;
  setup.varying_positions = {0.9, 0.1};
  GaParams params;
  params.events = 2;
  params.generations = 30;
  CHECK_THROWS_AS(sweep_measurement_position(setup, params), ValidationError);

  setup.varying_positions = {0.9};
  const auto points = sweep_measurement_position(setup, params);
  REQUIRE(points.size() == 1);
  CHECK(points[0].varying_position == 0.9);
  REQUIRE(points[0].stats.size() == 1);
  CHECK(points[0].stats[0].samples <= 2);
}

TEST_CASE("sensitivity curve without noise recovers an on-grid crack") {
  SensitivitySetup setup;
  setup.load = LoadCase(50.0);
  setup.truth = CrackSet({{0.6, 0.06}});
  setup.mesh = Mesh::uniform(4, 0.09, 3);
  setup.positions = {0.1, 0.9};
  NoiseModel noise;
  noise.realizations = 2;
  RemeshPolicy policy;
  policy.window_halfwidth_steps = 1;
  policy.iterations = 2;
  policy.events_per_iteration = 4;
  GaParams params;
  params.mutation_rate = 0.1;  // keeps exploring after convergence
  params.seed = 3;

  const std::vector<double> eps{0.0, 1e-3};
  const auto curve = sensitivity_curve(setup, eps, noise, policy, params);
  REQUIRE(curve.size() == 2);
  REQUIRE(curve[0].eta.size() == 1);
  CHECK(curve[0].eta[0].position <= 1e-12);
  CHECK(curve[0].eta[0].flexibility <= 1e-12);
  CHECK(curve[0].realizations.size() == 2);
  CHECK(curve[1].epsilon == 1e-3);
}
