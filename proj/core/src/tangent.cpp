#include "chaoscope/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chaoscope {

namespace {

void check_tangent_magnitude(const StateVector& v) {
  for (int i = 0; i < v.size(); ++i)
    if (!(std::fabs(v[i]) <= kTangentOverflowLimit))
      throw OverflowError(
          "tangent vector overflowed; renormalize periodically (see the "
          "spectrum estimators)");
}

}  // namespace

StateVector propagate_tangent(const MapDefinition& map,
                              std::span<const double> params,
                              const Trajectory& trajectory,
                              const StateVector& v0, JacobianMode mode) {
  if (v0.size() != map.dimension())
    throw DimensionError("tangent vector dimension does not match map");
  if (trajectory.diverged_at)
    throw DivergenceError("trajectory diverged; tangent propagation undefined",
                          *trajectory.diverged_at);

  StateVector v = v0;
  for (std::size_t k = 0; k < trajectory.steps(); ++k) {
    // one Jacobian per recorded step, evaluated at the pre-step state
    v = map.jacobian(trajectory.state_at_step(k), params, mode).apply(v);
    check_tangent_magnitude(v);
  }
  return v;
}

GramSpectrumResult gram_matrix_spectrum_oracle(const MapDefinition& map,
                                               std::span<const double> params,
                                               const StateVector& x0,
                                               std::size_t t,
                                               JacobianMode mode) {
  const int n = map.dimension();
  if (n > 3) throw DimensionError("Gram oracle supports dimension <= 3");
  if (x0.size() != n)
    throw DimensionError("initial state dimension does not match map");
  if (t < 1 || t > kGramOracleMaxSteps)
    throw std::invalid_argument("Gram oracle horizon t must be in [1, " +
                                std::to_string(kGramOracleMaxSteps) + "]");

  SquareMatrix product = SquareMatrix::identity(n);
  double log_scale = 0.0;
  double log_abs_det_sum = 0.0;
  StateVector x = x0;
  for (std::size_t k = 0; k < t; ++k) {
    const SquareMatrix jac = map.jacobian(x, params, mode);
    product = jac.times(product);
    log_abs_det_sum += std::log(std::fabs(jac.determinant()));

    const double magnitude = product.max_abs();
    if (!(magnitude < 1e306))
      throw OverflowError("Jacobian product overflowed despite rescaling");
    if (magnitude > 0.0 && (magnitude > 1e100 || magnitude < 1e-100)) {
      product.scale(1.0 / magnitude);
      log_scale += std::log(magnitude);
    }

    if (k + 1 < t) {
      x = map.apply(x, params);
      if (state_escaped(x)) throw DivergenceError("orbit diverged", k + 1);
    }
  }

  const SquareMatrix h = product.gram();
  const std::vector<double> eig = symmetric_eigenvalues(h);

  GramSpectrumResult result;
  result.t = t;
  result.eigenvalues_log.resize(n);
  for (int i = 0; i < n; ++i) {
    const double mu = std::max(eig[i], 0.0);  // clip eigensolver round-off
    result.eigenvalues_log[i] = std::log(mu) + 2.0 * log_scale;
  }

  // The eigensolver works at the scale of mu_1, so eigenvalues more than
  // ~12 orders below it are round-off. Recover the smallest one from the
  // telescoped determinant ln det H = 2 sum_k ln|det J_k| instead.
  if (n >= 2 && !(eig[n - 1] > eig[0] * 1e-12)) {
    double rest = 0.0;
    for (int i = 0; i + 1 < n; ++i) rest += result.eigenvalues_log[i];
    result.eigenvalues_log[n - 1] = 2.0 * log_abs_det_sum - rest;
  }

  std::sort(result.eigenvalues_log.begin(), result.eigenvalues_log.end(),
            std::greater<double>());
  result.exponents.resize(n);
  for (int i = 0; i < n; ++i)
    result.exponents[i] =
        result.eigenvalues_log[i] / (2.0 * static_cast<double>(t));
  return result;
}

}  // namespace chaoscope
