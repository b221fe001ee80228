#pragma once

#include <array>
#include <initializer_list>
#include <vector>

#include "chaoscope/state.hpp"

namespace chaoscope {

// Diagonal entries of R below this magnitude make a factorization rank
// deficient.
inline constexpr double kRankTolerance = 1e-300;

// Small dense square matrix (row-major, order <= kMaxDimension) with value
// semantics and inline storage.
class SquareMatrix {
 public:
  SquareMatrix() = default;

  explicit SquareMatrix(int order) : n_(check_order(order)) {}

  SquareMatrix(int order, std::initializer_list<double> row_major)
      : n_(check_order(order)) {
    if (row_major.size() != static_cast<std::size_t>(n_ * n_))
      throw DimensionError("matrix initializer size does not match order");
    int i = 0;
    for (double v : row_major) m_[i++] = v;
  }

  static SquareMatrix identity(int order) {
    SquareMatrix m(order);
    for (int i = 0; i < order; ++i) m(i, i) = 1.0;
    return m;
  }

  static SquareMatrix diagonal(std::initializer_list<double> diag) {
    SquareMatrix m(static_cast<int>(diag.size()));
    int i = 0;
    for (double v : diag) m(i, i) = v, ++i;
    return m;
  }

  int order() const noexcept { return n_; }

  double operator()(int r, int c) const noexcept { return m_[r * n_ + c]; }
  double& operator()(int r, int c) noexcept { return m_[r * n_ + c]; }

  // this * v
  StateVector apply(const StateVector& v) const;

  // this * rhs
  SquareMatrix times(const SquareMatrix& rhs) const;

  // this^T * this (symmetric by construction)
  SquareMatrix gram() const;

  // Closed-form determinant, order <= 3.
  double determinant() const;

  double max_abs() const noexcept;

  void scale(double factor) noexcept {
    for (int i = 0; i < n_ * n_; ++i) m_[i] *= factor;
  }

 private:
  static int check_order(int order) {
    if (order < 1 || order > kMaxDimension)
      throw DimensionError("matrix order must be in [1, " +
                           std::to_string(kMaxDimension) + "]");
    return order;
  }

  std::array<double, kMaxDimension * kMaxDimension> m_{};
  int n_ = 0;
};

// Q orthogonal, R upper triangular with non-negative diagonal, Q * R = input.
struct QRPair {
  SquareMatrix q;
  SquareMatrix r;
};

// Householder QR of a full-rank matrix. Column sign flips are absorbed into
// Q so every diagonal entry of R comes out >= 0, which makes the
// factorization unique and runs reproducible. Throws RankDeficiencyError
// when a diagonal entry of R falls below kRankTolerance.
QRPair qr_factorize(const SquareMatrix& a);

// Eigenvalues of a symmetric matrix in descending order. Closed form
// (quadratic / trigonometric cubic), order <= 3.
std::vector<double> symmetric_eigenvalues(const SquareMatrix& h);

}  // namespace chaoscope
