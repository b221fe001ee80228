#pragma once

#include <random>
#include <span>

#include "chaoscope/maps.hpp"

namespace chaoscope_test {

// Synthetic system with a pinned orbit (the update is the identity) and a
// fixed Jacobian, so tangent dynamics are exactly the powers of one matrix.
inline chaoscope::MapDefinition make_constant_jacobian_map(
    const chaoscope::SquareMatrix& j) {
  using namespace chaoscope;
  return MapDefinition(
      "constant_jacobian", j.order(), {},
      [](const StateVector& x, std::span<const double>) { return x; },
      [j](const StateVector&, std::span<const double>, JacobianMode) {
        return j;
      });
}

// Real 1-D linear dynamics x -> c x (consistent Jacobian), fixed point at 0.
inline chaoscope::MapDefinition make_linear_map_1d(double c) {
  using namespace chaoscope;
  return MapDefinition(
      "linear1d", 1, {},
      [c](const StateVector& x, std::span<const double>) {
        return StateVector{c * x[0]};
      },
      [c](const StateVector&, std::span<const double>, JacobianMode) {
        return SquareMatrix(1, {c});
      });
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace chaoscope_test
