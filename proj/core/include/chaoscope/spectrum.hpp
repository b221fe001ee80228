#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "chaoscope/maps.hpp"

namespace chaoscope {

enum class SpectrumMethod {
  benettin,
  qr,
  determinant_pair,
  direct,
};

std::string_view to_string(SpectrumMethod method);

// Lyapunov exponents of an n-dimensional map, descending, in nats per
// iteration, plus the metadata needed to reproduce the run.
struct SpectrumEstimate {
  std::vector<double> exponents;
  SpectrumMethod method = SpectrumMethod::benettin;
  std::size_t steps = 0;           // t
  std::size_t renorm_interval = 0; // tau (benettin only)
  std::size_t renorm_count = 0;    // s   (benettin only)
  std::optional<JacobianMode> jacobian_mode;  // empty for the Jacobian-free method
  // sum of exponents minus the orbit average of ln|det J|; only filled when
  // the method determines every exponent (qr, determinant_pair)
  std::optional<double> det_sum_check;
  std::size_t separation_resets = 0;  // direct method only
};

// Streaming state of the Benettin iteration: the current tangent direction,
// the running sum of ln(alpha_i), and the position within the current
// renormalization interval.
struct BenettinState {
  StateVector current_vector;
  double log_norm_accumulator = 0.0;
  std::size_t steps_since_renorm = 0;
};

// Benettin's periodically renormalized tangent iteration: propagate u0 one
// Jacobian per orbit step, every tau steps record alpha_i = |a_i| and reset
// the vector to unit length. The estimate is (1/(s tau)) sum ln(alpha_i).
// u0 must be a unit vector (|u0| = 1 within 1e-12).
SpectrumEstimate max_exponent_benettin(const MapDefinition& map,
                                       std::span<const double> params,
                                       const StateVector& x0,
                                       const StateVector& u0, std::size_t tau,
                                       std::size_t s, JacobianMode mode);

// For a 2-D map with constant |det J| = b: ln b - lambda1. Throws
// DomainError when b <= 0.
double second_exponent_from_determinant(double lambda1, double b);

// Benettin lambda1 plus the determinant shortcut for lambda2, as one
// two-exponent estimate (method = determinant_pair).
SpectrumEstimate benettin_determinant_pair(const MapDefinition& map,
                                           std::span<const double> params,
                                           const StateVector& x0,
                                           const StateVector& u0,
                                           std::size_t tau, std::size_t s,
                                           JacobianMode mode, double b);

// Full spectrum via the QR recursion Q_{k+1} R_{k+1} = J_k Q_k (seeded with
// the factorization of J at x0), streaming the per-step ln(r_ii) into
// running sums. O(1) memory in t. Exponents come back descending; exact
// ties (within 1e-12) keep their diagonal order.
SpectrumEstimate spectrum_qr(const MapDefinition& map,
                             std::span<const double> params,
                             const StateVector& x0, std::size_t t,
                             JacobianMode mode);

// Jacobian-free estimator of lambda1: a companion trajectory is kept at
// distance epsilon from the true orbit (re-scaled along the current
// separation direction every step) and the log separation growth is
// averaged. The initial direction is drawn from the seeded generator; should
// the separation ever collapse to zero, the direction is re-randomized and
// counted in separation_resets.
SpectrumEstimate max_exponent_direct(const MapDefinition& map,
                                     std::span<const double> params,
                                     const StateVector& x0, double epsilon,
                                     std::size_t t, std::uint64_t seed = 1);

// Unit vector (1, 0, ..., 0): the default tangent seed.
StateVector default_tangent_seed(int dimension);

}  // namespace chaoscope
