#pragma once

#include <cstddef>
#include <vector>

#include "chaoscope/maps.hpp"

namespace chaoscope {

// Tangent-vector components past this magnitude raise OverflowError; the
// spectrum estimators renormalize before ever getting close.
inline constexpr double kTangentOverflowLimit = 1e300;

// Upper limit on the Gram-matrix oracle horizon. The oracle forms an
// explicit (rescaled) Jacobian product, which is only safe for short runs;
// it is a cross-validation fixture, not a production estimator.
inline constexpr std::size_t kGramOracleMaxSteps = 200;

// Applies one Jacobian per recorded trajectory step to v0 (matrix-vector
// products only; the full product matrix is never formed):
//   J(x_{t-1}) ... J(x_1) J(x_0) v0.
StateVector propagate_tangent(const MapDefinition& map,
                              std::span<const double> params,
                              const Trajectory& trajectory,
                              const StateVector& v0, JacobianMode mode);

// Lyapunov exponents read off the eigenvalues mu_i of the Gram matrix
// H_t = (J^t)^T J^t: exponent_i = ln(mu_i) / (2t). Both sequences are
// descending and reported in log space, so severely contracting directions
// stay representable.
struct GramSpectrumResult {
  std::size_t t = 0;
  std::vector<double> exponents;
  std::vector<double> eigenvalues_log;
};

// Forms the t-step Jacobian product with running rescaling, builds H_t and
// solves the closed-form symmetric eigenproblem. The smallest eigenvalue is
// recovered from the telescoped log-determinant whenever the eigensolver
// cannot resolve it next to the dominant one. Requires t <= 200 and map
// dimension <= 3.
GramSpectrumResult gram_matrix_spectrum_oracle(const MapDefinition& map,
                                               std::span<const double> params,
                                               const StateVector& x0,
                                               std::size_t t,
                                               JacobianMode mode);

}  // namespace chaoscope
