#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "chaoscope/maps.hpp"
#include "test_helpers.hpp"

using namespace chaoscope;
using Catch::Matchers::WithinAbs;

TEST_CASE("logistic update rule") {
  CHECK_THAT(logistic_apply(0.1, 4.0), WithinAbs(0.36, 1e-15));
  CHECK(logistic_apply(0.0, 3.7) == 0.0);
  CHECK(logistic_apply(0.5, 4.0) == 1.0);  // map maximum r/4
}

TEST_CASE("logistic derivative") {
  CHECK(logistic_derivative(0.5, 4.0) == 0.0);  // critical point
  CHECK(logistic_derivative(0.0, 0.9) == 0.9);  // slope at origin is r
  CHECK(logistic_derivative(0.25, 4.0) == 2.0);
}

TEST_CASE("henon update rule") {
  auto [x1, y1] = henon_apply(0.1, 0.1, 1.4, 0.3);
  CHECK_THAT(x1, WithinAbs(1.086, 1e-15));
  CHECK_THAT(y1, WithinAbs(0.03, 1e-17));

  auto [ox, oy] = henon_apply(0.0, 0.0, 1.4, 0.3);
  CHECK(ox == 1.0);
  CHECK(oy == 0.0);
}

TEST_CASE("henon fixed point maps to itself") {
  // solve x = 1 + bx - a x^2 independently via the quadratic formula
  const double a = 1.4, b = 0.3;
  const double xs = (-(1.0 - b) + std::sqrt((1.0 - b) * (1.0 - b) + 4.0 * a)) /
                    (2.0 * a);
  const double ys = b * xs;
  CHECK_THAT(xs, WithinAbs(0.631354, 1e-6));
  CHECK_THAT(ys, WithinAbs(0.189406, 1e-6));
  auto [nx, ny] = henon_apply(xs, ys, a, b);
  CHECK_THAT(nx, WithinAbs(xs, 1e-12));
  CHECK_THAT(ny, WithinAbs(ys, 1e-12));
}

TEST_CASE("henon jacobian in both modes") {
  const SquareMatrix compat = henon_jacobian(0.1, 1.4, 0.3, JacobianMode::paper_compat);
  CHECK(compat(0, 0) == -0.2);
  CHECK(compat(0, 1) == 1.0);
  CHECK(compat(1, 0) == 0.3);
  CHECK(compat(1, 1) == 0.0);

  // analytic derivative of f_x = 1 + y - a x^2 carries the factor a
  const SquareMatrix corrected = henon_jacobian(0.1, 1.4, 0.3, JacobianMode::corrected);
  CHECK_THAT(corrected(0, 0), WithinAbs(-0.28, 1e-15));
  CHECK(corrected(0, 1) == 1.0);

  CHECK(compat.determinant() == -0.3);
  CHECK(corrected.determinant() == -0.3);
}

TEST_CASE("henon jacobian determinant is -b for any state and mode") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const double x = chaoscope_test::uniform(rng, -2.0, 2.0);
    const double a = chaoscope_test::uniform(rng, 0.1, 2.0);
    const double b = chaoscope_test::uniform(rng, 0.05, 0.95);
    for (JacobianMode mode : {JacobianMode::corrected, JacobianMode::paper_compat})
      CHECK(henon_jacobian(x, a, b, mode).determinant() == -b);
  }
}

TEST_CASE("logistic orbit decays toward zero for r < 1") {
  const double r[1] = {0.9};
  const Trajectory traj = iterate_map(logistic_map(), r, {0.1}, 10000, false);
  REQUIRE(traj.states.size() == 1);
  CHECK(std::fabs(traj.states[0][0]) < 1e-4);
  CHECK_FALSE(traj.diverged_at.has_value());
}

TEST_CASE("zero-step orbit is empty") {
  const double r[1] = {3.7};
  const Trajectory traj = iterate_map(logistic_map(), r, {0.1}, 0);
  CHECK(traj.states.empty());
  CHECK_FALSE(traj.diverged_at.has_value());
  CHECK(traj.initial_state == StateVector{0.1});
}

TEST_CASE("henon orbit from far outside the basin diverges") {
  const double p[2] = {1.4, 0.3};
  const Trajectory traj = iterate_map(henon_map(), p, {10.0, 10.0}, 100);

  // independent oracle: iterate by hand until |x| passes the threshold
  double x = 10.0, y = 10.0;
  std::size_t expected = 0;
  for (std::size_t k = 1; k <= 100; ++k) {
    auto [nx, ny] = henon_apply(x, y, 1.4, 0.3);
    x = nx, y = ny;
    if (!(std::fabs(x) <= kDivergenceThreshold) ||
        !(std::fabs(y) <= kDivergenceThreshold)) {
      expected = k;
      break;
    }
  }
  REQUIRE(expected != 0);
  REQUIRE(traj.diverged_at.has_value());
  CHECK(*traj.diverged_at == expected);
  CHECK(*traj.diverged_at <= 20);
  CHECK(traj.states.size() == expected);  // recording stopped there
}

TEST_CASE("logistic orbits stay in the unit interval") {
  std::mt19937_64 rng(20240817);
  const MapDefinition& map = logistic_map();
  for (int trial = 0; trial < 10000; ++trial) {
    const double r[1] = {chaoscope_test::uniform(rng, 0.0, 4.0)};
    const double x0 = chaoscope_test::uniform(rng, 0.0, 1.0);
    const Trajectory traj = iterate_map(map, r, {x0}, 50);
    REQUIRE_FALSE(traj.diverged_at.has_value());
    for (const StateVector& s : traj.states) {
      REQUIRE(s[0] >= 0.0);
      REQUIRE(s[0] <= 1.0);
    }
  }
}

TEST_CASE("iteration is deterministic and pure") {
  const double p[2] = {1.4, 0.3};
  const Trajectory a = iterate_map(henon_map(), p, {0.1, 0.1}, 500);
  const Trajectory b = iterate_map(henon_map(), p, {0.1, 0.1}, 500);
  REQUIRE(a.states.size() == b.states.size());
  for (std::size_t k = 0; k < a.states.size(); ++k)
    CHECK(a.states[k] == b.states[k]);  // bit-identical

  // re-applying the update to each recorded state reproduces the next one
  for (std::size_t k = 1; k <= a.steps(); ++k)
    CHECK(henon_map().apply(a.state_at_step(k - 1), p) == a.state_at_step(k));
}

TEST_CASE("map registry") {
  CHECK(find_map("logistic") == &logistic_map());
  CHECK(find_map("henon") == &henon_map());
  CHECK(find_map("lorenz") == nullptr);
  CHECK(builtin_map_names().size() == 2);
  CHECK(logistic_map().dimension() == 1);
  CHECK(henon_map().dimension() == 2);
}

TEST_CASE("parameter binding") {
  const BoundParameters defaults = bind_parameters(logistic_map(), {});
  REQUIRE(defaults.values.size() == 1);
  CHECK(defaults.values[0] == 4.0);
  CHECK(defaults.warnings.empty());

  const BoundParameters in_range = bind_parameters(logistic_map(), {{"r", 3.5}});
  CHECK(in_range.values[0] == 3.5);
  CHECK(in_range.warnings.empty());

  // outside the swept range: legal, but flagged
  const BoundParameters high = bind_parameters(logistic_map(), {{"r", 4.5}});
  CHECK(high.values[0] == 4.5);
  CHECK(high.warnings.size() == 1);

  CHECK_THROWS_AS(bind_parameters(logistic_map(), {{"q", 1.0}}),
                  std::invalid_argument);

  const BoundParameters henon = bind_parameters(henon_map(), {{"b", 0.25}});
  CHECK(henon.values[0] == 1.4);
  CHECK(henon.values[1] == 0.25);
}

TEST_CASE("dimension mismatches are rejected") {
  const double p[2] = {1.4, 0.3};
  CHECK_THROWS_AS(iterate_map(henon_map(), p, {0.1}, 10), DimensionError);
}
