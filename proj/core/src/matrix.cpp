#include "chaoscope/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chaoscope {

StateVector SquareMatrix::apply(const StateVector& v) const {
  if (v.size() != n_)
    throw DimensionError("matrix-vector dimension mismatch");
  StateVector out = StateVector::zeros(n_);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

SquareMatrix SquareMatrix::times(const SquareMatrix& rhs) const {
  if (rhs.n_ != n_) throw DimensionError("matrix-matrix dimension mismatch");
  SquareMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      double s = 0.0;
      for (int k = 0; k < n_; ++k) s += (*this)(i, k) * rhs(k, j);
      out(i, j) = s;
    }
  return out;
}

SquareMatrix SquareMatrix::gram() const {
  SquareMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) {
      double s = 0.0;
      for (int k = 0; k < n_; ++k) s += (*this)(k, i) * (*this)(k, j);
      out(i, j) = s;
      out(j, i) = s;
    }
  return out;
}

double SquareMatrix::determinant() const {
  const SquareMatrix& m = *this;
  switch (n_) {
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default:
      throw DimensionError("determinant implemented for order <= 3");
  }
}

double SquareMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (int i = 0; i < n_ * n_; ++i) m = std::max(m, std::fabs(m_[i]));
  return m;
}

QRPair qr_factorize(const SquareMatrix& a) {
  const int n = a.order();
  SquareMatrix r = a;
  SquareMatrix q = SquareMatrix::identity(n);

  double v[kMaxDimension];
  for (int k = 0; k + 1 < n; ++k) {
    double norm_sq = 0.0;
    for (int i = k; i < n; ++i) norm_sq += r(i, k) * r(i, k);
    const double norm = std::sqrt(norm_sq);
    if (norm == 0.0) continue;  // column already annihilated; rank check below

    // v = x + sign(x_k) |x| e_k avoids cancellation in the leading entry
    const double alpha = r(k, k) >= 0.0 ? -norm : norm;
    for (int i = k; i < n; ++i) v[i] = r(i, k);
    v[k] -= alpha;
    double vtv = 0.0;
    for (int i = k; i < n; ++i) vtv += v[i] * v[i];
    if (vtv == 0.0) continue;
    const double beta = 2.0 / vtv;

    // R <- (I - beta v v^T) R
    for (int j = k; j < n; ++j) {
      double s = 0.0;
      for (int i = k; i < n; ++i) s += v[i] * r(i, j);
      s *= beta;
      for (int i = k; i < n; ++i) r(i, j) -= s * v[i];
    }
    // Q <- Q (I - beta v v^T)
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = k; j < n; ++j) s += q(i, j) * v[j];
      s *= beta;
      for (int j = k; j < n; ++j) q(i, j) -= s * v[j];
    }
  }

  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) r(i, j) = 0.0;

  // sign convention: diagonal of R >= 0, flips absorbed into Q's columns
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) {
      for (int j = i; j < n; ++j) r(i, j) = -r(i, j);
      for (int j = 0; j < n; ++j) q(j, i) = -q(j, i);
    }
  }

  for (int i = 0; i < n; ++i) {
    if (!(r(i, i) > kRankTolerance))
      throw RankDeficiencyError(
          "rank-deficient input: R diagonal entry " + std::to_string(i) +
              " below tolerance",
          i);
  }
  return {q, r};
}

namespace {

// Smith's trigonometric solution of the symmetric 3x3 eigenproblem.
void eigenvalues_3x3(const SquareMatrix& h, double out[3]) {
  const double p1 = h(0, 1) * h(0, 1) + h(0, 2) * h(0, 2) + h(1, 2) * h(1, 2);
  if (p1 == 0.0) {
    out[0] = h(0, 0);
    out[1] = h(1, 1);
    out[2] = h(2, 2);
    return;
  }
  const double q = (h(0, 0) + h(1, 1) + h(2, 2)) / 3.0;
  const double d0 = h(0, 0) - q, d1 = h(1, 1) - q, d2 = h(2, 2) - q;
  const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  SquareMatrix b = h;
  for (int i = 0; i < 3; ++i) b(i, i) -= q;
  b.scale(1.0 / p);
  double detb_half = b.determinant() / 2.0;
  detb_half = std::clamp(detb_half, -1.0, 1.0);
  const double phi = std::acos(detb_half) / 3.0;
  const double two_pi_thirds = 2.0943951023931953;
  out[0] = q + 2.0 * p * std::cos(phi);
  out[2] = q + 2.0 * p * std::cos(phi + two_pi_thirds);
  out[1] = 3.0 * q - out[0] - out[2];
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const SquareMatrix& h) {
  const int n = h.order();
  std::vector<double> eig;
  switch (n) {
    case 1:
      eig = {h(0, 0)};
      break;
    case 2: {
      const double mid = 0.5 * (h(0, 0) + h(1, 1));
      const double half_gap =
          0.5 * std::hypot(h(0, 0) - h(1, 1), 2.0 * h(0, 1));
      eig = {mid + half_gap, mid - half_gap};
      break;
    }
    case 3: {
      double out[3];
      eigenvalues_3x3(h, out);
      eig = {out[0], out[1], out[2]};
      break;
    }
    default:
      throw DimensionError("symmetric eigensolver implemented for order <= 3");
  }
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

}  // namespace chaoscope
