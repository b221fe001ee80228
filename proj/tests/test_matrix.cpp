#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "chaoscope/matrix.hpp"
#include "test_helpers.hpp"

using namespace chaoscope;
using Catch::Matchers::WithinAbs;

namespace {

double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
  double m = 0.0;
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j)
      m = std::max(m, std::fabs(a(i, j) - b(i, j)));
  return m;
}

SquareMatrix random_matrix(std::mt19937_64& rng, int n, double lo, double hi) {
  SquareMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = chaoscope_test::uniform(rng, lo, hi);
  return m;
}

}  // namespace

TEST_CASE("qr of the identity is trivial") {
  const QRPair qr = qr_factorize(SquareMatrix::identity(3));
  CHECK(max_abs_diff(qr.q, SquareMatrix::identity(3)) == 0.0);
  CHECK(max_abs_diff(qr.r, SquareMatrix::identity(3)) == 0.0);
}

TEST_CASE("qr of a permutation has unit R diagonal") {
  const QRPair qr = qr_factorize(SquareMatrix(2, {0.0, 1.0, 1.0, 0.0}));
  CHECK(qr.r(0, 0) == 1.0);
  CHECK(qr.r(1, 1) == 1.0);
}

TEST_CASE("qr factorization properties on random matrices") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = trial % 2 == 0 ? 2 : 3;
    const SquareMatrix a = random_matrix(rng, n, -10.0, 10.0);
    const QRPair qr = qr_factorize(a);

    // orthogonality
    CHECK(max_abs_diff(qr.q.gram(), SquareMatrix::identity(n)) <= 1e-12);
    // reconstruction, relative to the input scale
    CHECK(max_abs_diff(qr.q.times(qr.r), a) <= 1e-12 * std::max(1.0, a.max_abs()));
    // sign convention and exact triangularity
    for (int i = 0; i < n; ++i) {
      CHECK(qr.r(i, i) >= 0.0);
      for (int j = 0; j < i; ++j) CHECK(qr.r(i, j) == 0.0);
    }
    // deterministic: factoring again is bit-identical
    const QRPair again = qr_factorize(a);
    CHECK(max_abs_diff(again.q, qr.q) == 0.0);
    CHECK(max_abs_diff(again.r, qr.r) == 0.0);
    // factoring q*r recovers the pair
    const QRPair recovered = qr_factorize(qr.q.times(qr.r));
    CHECK(max_abs_diff(recovered.q, qr.q) <= 1e-10);
    CHECK(max_abs_diff(recovered.r, qr.r) <= 1e-10 * std::max(1.0, qr.r.max_abs()));
    // orthogonal matrices preserve norms
    StateVector x = StateVector::zeros(n);
    for (int i = 0; i < n; ++i) x[i] = unit(rng);
    CHECK(std::fabs(qr.q.apply(x).norm() - x.norm()) <= 1e-12 * std::max(1.0, x.norm()));
  }
}

TEST_CASE("upper-triangular products stay upper triangular") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = trial % 2 == 0 ? 2 : 3;
    SquareMatrix a(n), b(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        a(i, j) = chaoscope_test::uniform(rng, -5.0, 5.0);
        b(i, j) = chaoscope_test::uniform(rng, -5.0, 5.0);
      }
    const SquareMatrix p = a.times(b);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) CHECK(p(i, j) == 0.0);
      // the diagonal multiplies entrywise; off-diagonals never feed into it
      CHECK(p(i, i) == a(i, i) * b(i, i));
    }
  }
}

TEST_CASE("rank-deficient input is reported with the failing diagonal") {
  try {
    qr_factorize(SquareMatrix(2, {1.0, 2.0, 0.0, 0.0}));
    FAIL("expected RankDeficiencyError");
  } catch (const RankDeficiencyError& e) {
    CHECK(e.diagonal_index() == 1);
  }
  CHECK_THROWS_AS(qr_factorize(SquareMatrix(3)), RankDeficiencyError);
}

TEST_CASE("symmetric eigenvalues in closed form") {
  const auto pair = symmetric_eigenvalues(SquareMatrix(2, {2.0, 1.0, 1.0, 2.0}));
  REQUIRE(pair.size() == 2);
  CHECK_THAT(pair[0], WithinAbs(3.0, 1e-14));
  CHECK_THAT(pair[1], WithinAbs(1.0, 1e-14));

  const auto diag = symmetric_eigenvalues(SquareMatrix::diagonal({-1.0, 5.0, 2.0}));
  REQUIRE(diag.size() == 3);
  CHECK(diag == std::vector<double>{5.0, 2.0, -1.0});
}

TEST_CASE("symmetric eigenvalues satisfy trace, determinant and residual") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = trial % 2 == 0 ? 2 : 3;
    SquareMatrix h(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        h(i, j) = h(j, i) = chaoscope_test::uniform(rng, -4.0, 4.0);
    const auto eig = symmetric_eigenvalues(h);
    REQUIRE(static_cast<int>(eig.size()) == n);

    double trace = 0.0, eig_sum = 0.0, eig_prod = 1.0;
    for (int i = 0; i < n; ++i) trace += h(i, i);
    for (double mu : eig) eig_sum += mu, eig_prod *= mu;
    CHECK_THAT(eig_sum, WithinAbs(trace, 1e-11));
    CHECK_THAT(eig_prod, WithinAbs(h.determinant(), 1e-10));
    for (std::size_t i = 1; i < eig.size(); ++i) CHECK(eig[i - 1] >= eig[i]);

    for (double mu : eig) {
      SquareMatrix shifted = h;
      for (int i = 0; i < n; ++i) shifted(i, i) -= mu;
      const double scale = std::max(1.0, h.max_abs() + std::fabs(mu));
      CHECK(std::fabs(shifted.determinant()) <= 1e-11 * scale * scale * scale);
    }
  }
}

TEST_CASE("matrix-vector and matrix-matrix basics") {
  const SquareMatrix m(2, {1.0, 2.0, 3.0, 4.0});
  const StateVector v = m.apply({1.0, -1.0});
  CHECK(v[0] == -1.0);
  CHECK(v[1] == -1.0);
  CHECK(m.determinant() == -2.0);
  CHECK(m.max_abs() == 4.0);
  CHECK_THROWS_AS(m.apply({1.0, 2.0, 3.0}), DimensionError);
  CHECK_THROWS_AS(SquareMatrix(5), DimensionError);
}
