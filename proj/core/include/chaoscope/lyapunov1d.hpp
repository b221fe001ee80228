#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "chaoscope/maps.hpp"

namespace chaoscope {

// Derivative magnitudes (and finite-difference separations) are clamped at
// this floor before taking logs, so superstable orbits report a huge
// negative exponent plus a floor_hits count instead of -inf or NaN.
inline constexpr double kDefaultLogFloor = 1e-300;

inline constexpr double kDefaultEpsilon = 1e-8;

enum class EstimatorMethod {
  derivative_sum,
  finite_difference,
  benettin,
  qr,
  direct_perturbation,
};

std::string_view to_string(EstimatorMethod method);

// One scalar Lyapunov exponent with full provenance (nats per iteration).
struct LyapunovEstimate {
  double value = 0.0;
  EstimatorMethod method = EstimatorMethod::derivative_sum;
  std::size_t steps = 0;
  double epsilon = 0.0;  // 0 when the method uses none
  std::size_t burn_in = 0;
  std::size_t floor_hits = 0;
  bool diverged = false;
};

// lambda = (1/n) sum_{i=0}^{n-1} ln max(|f'(x_i)|, log_floor) along the
// orbit, after discarding burn_in transient steps.
LyapunovEstimate lyapunov_derivative_sum(const MapDefinition& map,
                                         std::span<const double> params,
                                         double x0, std::size_t n,
                                         std::size_t burn_in = 0,
                                         double log_floor = kDefaultLogFloor);

// One-step-renormalized finite differences: at each step the perturbed point
// is re-seeded at x_i + epsilon from the true orbit, d_i = |f(x_i + eps) -
// x_{i+1}| is measured and ln(d_i / eps) accumulated over n steps (the i = 0
// term from the starting point included, so there are exactly n terms).
// Zero separations are clamped at log_floor and counted as floor hits.
LyapunovEstimate lyapunov_finite_difference(const MapDefinition& map,
                                            std::span<const double> params,
                                            double x0, std::size_t n,
                                            double epsilon = kDefaultEpsilon,
                                            std::size_t burn_in = 0,
                                            double log_floor = kDefaultLogFloor);

// Per-grid-point estimator settings for a parameter sweep.
struct SweepPointConfig {
  EstimatorMethod method = EstimatorMethod::finite_difference;
  std::size_t n = 10000;
  double epsilon = kDefaultEpsilon;
  std::size_t burn_in = 0;
  double log_floor = kDefaultLogFloor;
  double x0 = 0.1;
};

struct SweepRecord {
  double parameter_value = 0.0;
  LyapunovEstimate estimate;
};

// Uniform grid r_min, r_min + step, ... inclusive of r_max within half a
// step.
std::vector<double> parameter_grid(double r_min, double r_max, double r_step);

// One estimate per grid point, ascending in r. Divergent points come back
// flagged (diverged = true, NaN value) instead of aborting the sweep. With
// thread_count > 1 grid points are evaluated concurrently; the output is
// identical to a sequential run.
std::vector<SweepRecord> lyapunov_sweep(const MapDefinition& map, double r_min,
                                        double r_max, double r_step,
                                        const SweepPointConfig& per_point,
                                        int thread_count = 1);

}  // namespace chaoscope
