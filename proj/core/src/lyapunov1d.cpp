#include "chaoscope/lyapunov1d.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "chaoscope/parallel.hpp"

namespace chaoscope {

std::string_view to_string(EstimatorMethod method) {
  switch (method) {
    case EstimatorMethod::derivative_sum:
      return "derivative_sum";
    case EstimatorMethod::finite_difference:
      return "finite_difference";
    case EstimatorMethod::benettin:
      return "benettin";
    case EstimatorMethod::qr:
      return "qr";
    case EstimatorMethod::direct_perturbation:
      return "direct_perturbation";
  }
  return "unknown";
}

namespace {

void require_1d(const MapDefinition& map) {
  if (map.dimension() != 1)
    throw DimensionError("estimator requires a one-dimensional map, \"" +
                         map.name() + "\" has dimension " +
                         std::to_string(map.dimension()));
}

void check_common(std::size_t n, double log_floor) {
  if (n < 1) throw std::invalid_argument("step count n must be >= 1");
  if (!(log_floor > 0.0))
    throw std::invalid_argument("log_floor must be positive");
}

// Advances the scalar orbit through the transient, reporting the 1-based
// step index on escape.
double run_burn_in(const MapDefinition& map, std::span<const double> p,
                   double x0, std::size_t burn_in) {
  StateVector x{x0};
  for (std::size_t k = 1; k <= burn_in; ++k) {
    x = map.apply(x, p);
    if (state_escaped(x))
      throw DivergenceError("orbit diverged during burn-in", k);
  }
  return x[0];
}

}  // namespace

LyapunovEstimate lyapunov_derivative_sum(const MapDefinition& map,
                                         std::span<const double> p, double x0,
                                         std::size_t n, std::size_t burn_in,
                                         double log_floor) {
  require_1d(map);
  check_common(n, log_floor);

  StateVector x{run_burn_in(map, p, x0, burn_in)};
  double sum = 0.0;
  std::size_t floor_hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double g = std::fabs(map.jacobian(x, p, JacobianMode::corrected)(0, 0));
    if (g < log_floor) {
      g = log_floor;
      ++floor_hits;
    }
    sum += std::log(g);
    if (i + 1 < n) {
      x = map.apply(x, p);
      if (state_escaped(x))
        throw DivergenceError("orbit diverged", burn_in + i + 1);
    }
  }
  LyapunovEstimate est;
  est.value = sum / static_cast<double>(n);
  est.method = EstimatorMethod::derivative_sum;
  est.steps = n;
  est.epsilon = 0.0;
  est.burn_in = burn_in;
  est.floor_hits = floor_hits;
  return est;
}

LyapunovEstimate lyapunov_finite_difference(const MapDefinition& map,
                                            std::span<const double> p,
                                            double x0, std::size_t n,
                                            double epsilon,
                                            std::size_t burn_in,
                                            double log_floor) {
  require_1d(map);
  check_common(n, log_floor);
  if (!(epsilon > 0.0))
    throw std::invalid_argument("epsilon must be positive");

  double x = run_burn_in(map, p, x0, burn_in);
  double sum = 0.0;
  std::size_t floor_hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x_next = map.apply(StateVector{x}, p)[0];
    const double x_pert = map.apply(StateVector{x + epsilon}, p)[0];
    double ratio = std::fabs(x_pert - x_next) / epsilon;
    if (ratio < log_floor) {
      ratio = log_floor;
      ++floor_hits;
    }
    sum += std::log(ratio);
    x = x_next;
    if (!(std::fabs(x) <= kDivergenceThreshold))
      throw DivergenceError("orbit diverged", burn_in + i + 1);
  }
  LyapunovEstimate est;
  est.value = sum / static_cast<double>(n);
  est.method = EstimatorMethod::finite_difference;
  est.steps = n;
  est.epsilon = epsilon;
  est.burn_in = burn_in;
  est.floor_hits = floor_hits;
  return est;
}

std::vector<double> parameter_grid(double r_min, double r_max, double r_step) {
  if (!(r_step > 0.0)) throw std::invalid_argument("r_step must be positive");
  if (r_min > r_max)
    throw std::invalid_argument("r_min must not exceed r_max");
  // inclusive of r_max whenever it lies within half a step of a grid point
  const auto count =
      static_cast<std::size_t>(std::floor((r_max - r_min) / r_step + 0.5)) + 1;
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k)
    grid[k] = r_min + static_cast<double>(k) * r_step;
  return grid;
}

std::vector<SweepRecord> lyapunov_sweep(const MapDefinition& map, double r_min,
                                        double r_max, double r_step,
                                        const SweepPointConfig& per_point,
                                        int thread_count) {
  require_1d(map);
  if (map.parameter_schema().size() != 1)
    throw std::invalid_argument(
        "sweep requires a map with exactly one parameter");
  if (per_point.method != EstimatorMethod::derivative_sum &&
      per_point.method != EstimatorMethod::finite_difference)
    throw std::invalid_argument("sweep supports the 1-D estimators only");

  const std::vector<double> grid = parameter_grid(r_min, r_max, r_step);
  std::vector<SweepRecord> records(grid.size());
  parallel_for_indexed(grid.size(), thread_count, [&](std::size_t k) {
    const double r[1] = {grid[k]};
    records[k].parameter_value = grid[k];
    try {
      records[k].estimate =
          per_point.method == EstimatorMethod::derivative_sum
              ? lyapunov_derivative_sum(map, r, per_point.x0, per_point.n,
                                        per_point.burn_in, per_point.log_floor)
              : lyapunov_finite_difference(map, r, per_point.x0, per_point.n,
                                           per_point.epsilon,
                                           per_point.burn_in,
                                           per_point.log_floor);
    } catch (const DivergenceError& e) {
      LyapunovEstimate& est = records[k].estimate;
      est.value = std::numeric_limits<double>::quiet_NaN();
      est.method = per_point.method;
      est.steps = e.step();
      est.epsilon = per_point.method == EstimatorMethod::finite_difference
                        ? per_point.epsilon
                        : 0.0;
      est.burn_in = per_point.burn_in;
      est.diverged = true;
    }
  });
  return records;
}

}  // namespace chaoscope
