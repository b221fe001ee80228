#include "chaoscope/spectrum.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "chaoscope/matrix.hpp"
#include "chaoscope/tangent.hpp"

namespace chaoscope {

std::string_view to_string(SpectrumMethod method) {
  switch (method) {
    case SpectrumMethod::benettin:
      return "benettin";
    case SpectrumMethod::qr:
      return "qr";
    case SpectrumMethod::determinant_pair:
      return "determinant_pair";
    case SpectrumMethod::direct:
      return "direct";
  }
  return "unknown";
}

StateVector default_tangent_seed(int dimension) {
  StateVector u = StateVector::zeros(dimension);
  u[0] = 1.0;
  return u;
}

namespace {

void check_state(const MapDefinition& map, const StateVector& x0) {
  if (x0.size() != map.dimension())
    throw DimensionError("initial state dimension does not match map \"" +
                         map.name() + "\"");
}

void check_tangent(const StateVector& v, std::size_t tau) {
  for (int i = 0; i < v.size(); ++i)
    if (!(std::fabs(v[i]) <= kTangentOverflowLimit))
      throw OverflowError(
          "tangent vector overflowed between renormalizations; use a smaller "
          "tau than " +
          std::to_string(tau));
}

// Sorts descending; entries within 1e-12 of each other keep their original
// (diagonal) order.
void sort_exponents(std::vector<double>& exponents) {
  const std::size_t n = exponents.size();
  std::vector<std::size_t> index(n);
  for (std::size_t i = 0; i < n; ++i) index[i] = i;
  for (std::size_t pass = 0; pass + 1 < n; ++pass)
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const bool tied = std::fabs(exponents[i] - exponents[i + 1]) < 1e-12;
      const bool out_of_order =
          tied ? index[i] > index[i + 1] : exponents[i] < exponents[i + 1];
      if (out_of_order) {
        std::swap(exponents[i], exponents[i + 1]);
        std::swap(index[i], index[i + 1]);
      }
    }
}

}  // namespace

SpectrumEstimate max_exponent_benettin(const MapDefinition& map,
                                       std::span<const double> params,
                                       const StateVector& x0,
                                       const StateVector& u0, std::size_t tau,
                                       std::size_t s, JacobianMode mode) {
  check_state(map, x0);
  if (u0.size() != map.dimension())
    throw DimensionError("tangent seed dimension does not match map");
  if (std::fabs(u0.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("u0 must be a unit vector");
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  if (s < 1) throw std::invalid_argument("renormalization count must be >= 1");

  const std::size_t total = s * tau;
  StateVector x = x0;
  BenettinState tangent{u0, 0.0, 0};
  std::size_t step = 0;
  for (std::size_t i = 1; i <= s; ++i) {
    for (std::size_t j = 0; j < tau; ++j) {
      tangent.current_vector =
          map.jacobian(x, params, mode).apply(tangent.current_vector);
      check_tangent(tangent.current_vector, tau);
      ++tangent.steps_since_renorm;
      ++step;
      if (step < total) {
        x = map.apply(x, params);
        if (state_escaped(x)) throw DivergenceError("orbit diverged", step);
      }
    }
    const double alpha = tangent.current_vector.norm();
    tangent.log_norm_accumulator += std::log(alpha);
    if (alpha > 0.0) {
      for (int c = 0; c < tangent.current_vector.size(); ++c)
        tangent.current_vector[c] /= alpha;
    }
    tangent.steps_since_renorm = 0;
  }

  SpectrumEstimate est;
  est.exponents = {tangent.log_norm_accumulator /
                   static_cast<double>(total)};
  est.method = SpectrumMethod::benettin;
  est.steps = total;
  est.renorm_interval = tau;
  est.renorm_count = s;
  est.jacobian_mode = mode;
  return est;
}

double second_exponent_from_determinant(double lambda1, double b) {
  if (!(b > 0.0))
    throw DomainError("determinant shortcut requires b > 0 (uses ln b)");
  return std::log(b) - lambda1;
}

SpectrumEstimate benettin_determinant_pair(const MapDefinition& map,
                                           std::span<const double> params,
                                           const StateVector& x0,
                                           const StateVector& u0,
                                           std::size_t tau, std::size_t s,
                                           JacobianMode mode, double b) {
  SpectrumEstimate est = max_exponent_benettin(map, params, x0, u0, tau, s, mode);
  const double lambda1 = est.exponents[0];
  const double lambda2 = second_exponent_from_determinant(lambda1, b);
  est.exponents = {lambda1, lambda2};
  sort_exponents(est.exponents);
  est.method = SpectrumMethod::determinant_pair;
  est.det_sum_check = (lambda1 + lambda2) - std::log(b);
  return est;
}

SpectrumEstimate spectrum_qr(const MapDefinition& map,
                             std::span<const double> params,
                             const StateVector& x0, std::size_t t,
                             JacobianMode mode) {
  check_state(map, x0);
  if (t < 1) throw std::invalid_argument("step count t must be >= 1");

  const int n = map.dimension();
  std::vector<double> log_r_sum(n, 0.0);
  double log_abs_det_sum = 0.0;
  SquareMatrix q;
  StateVector x = x0;
  for (std::size_t k = 0; k < t; ++k) {
    const SquareMatrix jac = map.jacobian(x, params, mode);
    const SquareMatrix b = k == 0 ? jac : jac.times(q);
    QRPair qr;
    try {
      qr = qr_factorize(b);
    } catch (const RankDeficiencyError& e) {
      throw RankDeficiencyError(
          std::string(e.what()) + " (QR recursion step " +
              std::to_string(k + 1) + ")",
          e.diagonal_index(), k + 1);
    }
    for (int i = 0; i < n; ++i) log_r_sum[i] += std::log(qr.r(i, i));
    log_abs_det_sum += std::log(std::fabs(jac.determinant()));
    q = std::move(qr.q);

    if (k + 1 < t) {
      x = map.apply(x, params);
      if (state_escaped(x)) throw DivergenceError("orbit diverged", k + 1);
    }
  }

  SpectrumEstimate est;
  est.exponents.resize(n);
  double exponent_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    est.exponents[i] = log_r_sum[i] / static_cast<double>(t);
    exponent_sum += est.exponents[i];
  }
  sort_exponents(est.exponents);
  est.method = SpectrumMethod::qr;
  est.steps = t;
  est.jacobian_mode = mode;
  est.det_sum_check =
      exponent_sum - log_abs_det_sum / static_cast<double>(t);
  return est;
}

SpectrumEstimate max_exponent_direct(const MapDefinition& map,
                                     std::span<const double> params,
                                     const StateVector& x0, double epsilon,
                                     std::size_t t, std::uint64_t seed) {
  check_state(map, x0);
  if (!(epsilon > 0.0))
    throw std::invalid_argument("epsilon must be positive");
  if (t < 1) throw std::invalid_argument("step count t must be >= 1");

  const int n = map.dimension();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_unit = [&] {
    StateVector u = StateVector::zeros(n);
    double norm = 0.0;
    while (norm == 0.0) {
      for (int i = 0; i < n; ++i) u[i] = gauss(rng);
      norm = u.norm();
    }
    for (int i = 0; i < n; ++i) u[i] /= norm;
    return u;
  };

  StateVector x = x0;
  StateVector companion = x0;
  {
    const StateVector dir = random_unit();
    for (int i = 0; i < n; ++i) companion[i] = x0[i] + epsilon * dir[i];
  }

  double sum = 0.0;
  std::size_t valid = 0;
  std::size_t resets = 0;
  for (std::size_t step = 1; step <= t; ++step) {
    x = map.apply(x, params);
    if (state_escaped(x)) throw DivergenceError("orbit diverged", step);
    companion = map.apply(companion, params);

    double dist_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = companion[i] - x[i];
      dist_sq += d * d;
    }
    const double dist = std::sqrt(dist_sq);
    if (!(dist > 0.0)) {
      // trajectories collapsed; restart the probe in a fresh direction
      ++resets;
      const StateVector dir = random_unit();
      for (int i = 0; i < n; ++i) companion[i] = x[i] + epsilon * dir[i];
      continue;
    }
    sum += std::log(dist / epsilon);
    ++valid;
    const double rescale = epsilon / dist;
    for (int i = 0; i < n; ++i)
      companion[i] = x[i] + rescale * (companion[i] - x[i]);
  }
  if (valid == 0)
    throw ZeroSeparationError(
        "separation collapsed at every step; no growth rate measurable");

  SpectrumEstimate est;
  est.exponents = {sum / static_cast<double>(valid)};
  est.method = SpectrumMethod::direct;
  est.steps = t;
  est.separation_resets = resets;
  return est;
}

}  // namespace chaoscope
