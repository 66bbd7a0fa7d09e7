#include <cmath>

#include <doctest.h>

#include "salc/matrix.hpp"
#include "salc/rng.hpp"

using namespace salc;

namespace {

const double kHalfSqrt2 = std::sqrt(2.0) / 2.0;

Matrix sys1_a() { return Matrix::from_rows({{kHalfSqrt2, kHalfSqrt2}, {-kHalfSqrt2, kHalfSqrt2}}); }
Matrix sys1_b() { return Matrix::from_rows({{0.0}, {1.0}}); }
// Reachability matrix of the first benchmark pair, [B, AB].
Matrix sys1_reach() { return Matrix::from_rows({{0.0, kHalfSqrt2}, {1.0, kHalfSqrt2}}); }

// Independent 2x2 oracle: singular values from the characteristic polynomial
// of M^T M via the quadratic formula.
std::pair<double, double> singular_values_2x2(const Matrix& m) {
  const Matrix g = transpose(m) * m;
  const double tr = g(0, 0) + g(1, 1);
  const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  return {std::sqrt(std::max(0.0, (tr + disc) / 2.0)), std::sqrt(std::max(0.0, (tr - disc) / 2.0))};
}

Matrix random_matrix(int r, int c, Rng& rng) {
  Matrix m(r, c);
  for (double& e : m.entries()) e = rng.next_gaussian();
  return m;
}

double max_abs(const Matrix& m) {
  double v = 0.0;
  for (double e : m.entries()) v = std::max(v, std::abs(e));
  return v;
}

// Cofactor-expansion determinant for d <= 3.
double det_small(const Matrix& m) {
  if (m.rows() == 1) return m(0, 0);
  if (m.rows() == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

}  // namespace

TEST_SUITE("matrix") {
  TEST_CASE("product: identity, benchmark pair, zero") {
    const Matrix m = Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
    CHECK(max_abs(Matrix::identity(2) * m - m) == 0.0);

    const Matrix ab = sys1_a() * sys1_b();
    CHECK(ab(0, 0) == doctest::Approx(kHalfSqrt2).epsilon(1e-12));
    CHECK(ab(1, 0) == doctest::Approx(kHalfSqrt2).epsilon(1e-12));

    CHECK(max_abs(Matrix(2, 2) * m) == 0.0);
    CHECK_THROWS_AS(Matrix(2, 3) * Matrix(2, 3), std::invalid_argument);
  }

  TEST_CASE("spectral norm: diagonal, rotation, oracle") {
    CHECK(spectral_norm(Matrix::from_rows({{3.0, 0.0}, {0.0, 4.0}})) == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(spectral_norm(sys1_a()) == doctest::Approx(1.0).epsilon(1e-10));
    const auto [smax, smin] = singular_values_2x2(sys1_reach());
    CHECK(spectral_norm(sys1_reach()) == doctest::Approx(smax).epsilon(1e-10));
    CHECK(sigma_min(sys1_reach()) == doctest::Approx(smin).epsilon(1e-10));
  }

  TEST_CASE("sigma_min: identity and rank deficiency") {
    CHECK(sigma_min(Matrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sigma_min(Matrix::from_rows({{1.0, 1.0}, {1.0, 1.0}})) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  }

  TEST_CASE("pinv: identity, benchmark reachability matrix, zero") {
    CHECK(max_abs(pinv(Matrix::identity(3)) - Matrix::identity(3)) < 1e-12);

    const Matrix inv = pinv(sys1_reach());
    const Matrix expected = Matrix::from_rows({{-1.0, 1.0}, {std::sqrt(2.0), 0.0}});
    CHECK(max_abs(inv - expected) < 1e-10);
    CHECK(max_abs(sys1_reach() * inv - Matrix::identity(2)) < 1e-10);

    const Matrix zp = pinv(Matrix(2, 3));
    CHECK(zp.rows() == 3);
    CHECK(zp.cols() == 2);
    CHECK(max_abs(zp) == 0.0);
  }

  TEST_CASE("pinv: full-row-rank fat matrices match the normal-equation form") {
    Rng rng(19);
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix m = random_matrix(2, 4, rng);
      if (sigma_min(m) < 1e-3) continue;
      // m^T (m m^T)^{-1}, with the 2x2 inverse taken in closed form
      const Matrix g = m * transpose(m);
      const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
      const Matrix g_inv = (1.0 / det) * Matrix::from_rows({{g(1, 1), -g(0, 1)}, {-g(1, 0), g(0, 0)}});
      CHECK(max_abs(pinv(m) - transpose(m) * g_inv) < 1e-9);
    }
  }

  TEST_CASE("pinv: Moore-Penrose residuals on random matrices") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
      const int r = 1 + static_cast<int>(rng.next_u64() % 6);
      const int c = 1 + static_cast<int>(rng.next_u64() % 6);
      Matrix m = random_matrix(r, c, rng);
      if (trial % 3 == 0 && r > 1 && c > 1)  // force rank deficiency
        for (int j = 0; j < c; ++j) m(r - 1, j) = m(0, j);
      const Matrix p = pinv(m);
      const double tol = 1e-9 * (1.0 + spectral_norm(m));
      CHECK(max_abs(m * p * m - m) <= tol);
      CHECK(max_abs(p * m * p - p) <= tol);
      CHECK(max_abs(m * p - transpose(m * p)) <= tol);
      CHECK(max_abs(p * m - transpose(p * m)) <= tol);
    }
  }

  TEST_CASE("singular values keep relative accuracy at small magnitudes") {
    // exact construction: rotation * diag * rotation
    auto rot = [](double t) { return Matrix::from_rows({{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}}); };
    for (double tiny : {1e-3, 1e-6, 1e-9}) {
      const Matrix m = rot(0.3) * Matrix::from_rows({{3.0, 0.0}, {0.0, tiny}}) * rot(-1.1);
      CHECK(spectral_norm(m) == doctest::Approx(3.0).epsilon(1e-10));
      CHECK(sigma_min(m) == doctest::Approx(tiny).epsilon(1e-9));
    }
  }

  TEST_CASE("singular values: 1x1 agreement and ordering") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix one = random_matrix(1, 1, rng);
      CHECK(spectral_norm(one) == doctest::Approx(sigma_min(one)).epsilon(1e-12));
      const Matrix m = random_matrix(2 + static_cast<int>(rng.next_u64() % 4), 2 + static_cast<int>(rng.next_u64() % 4), rng);
      CHECK(spectral_norm(m) >= sigma_min(m));
      CHECK(spectral_norm(transpose(m)) == doctest::Approx(spectral_norm(m)).epsilon(1e-10));
    }
  }

  TEST_CASE("symmetric eigenvalue bounds") {
    CHECK(sym_eig_bounds(Matrix::from_rows({{1.0, 0.0}, {0.0, 5.0}})) == std::pair<double, double>{1.0, 5.0});
    const auto [lo, hi] = sym_eig_bounds(Matrix::identity(4));
    CHECK(lo == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hi == doctest::Approx(1.0).epsilon(1e-12));

    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      Matrix l(2, 2);
      l(0, 0) = 0.5 + rng.next_double();
      l(1, 0) = rng.next_gaussian();
      l(1, 1) = 0.5 + rng.next_double();
      const Matrix g = l * transpose(l);
      // closed-form eigenvalues of a symmetric 2x2
      const double tr = g(0, 0) + g(1, 1);
      const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
      const double disc = std::sqrt(tr * tr - 4.0 * det);
      const auto [emin, emax] = sym_eig_bounds(g);
      CHECK(emin == doctest::Approx((tr - disc) / 2.0).epsilon(1e-10));
      CHECK(emax == doctest::Approx((tr + disc) / 2.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(sym_eig_bounds(Matrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})), std::invalid_argument);
  }

  TEST_CASE("logdet: identity, diagonal, scaling law, cofactor oracle") {
    CHECK(logdet_spd(Matrix::identity(5)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(logdet_spd(Matrix::from_rows({{2.0, 0.0}, {0.0, 3.0}})) == doctest::Approx(std::log(6.0)).epsilon(1e-12));
    CHECK(logdet_spd(7.0 * Matrix::identity(3)) == doctest::Approx(3.0 * std::log(7.0)).epsilon(1e-12));

    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
      const int d = 1 + static_cast<int>(rng.next_u64() % 3);
      Matrix l(d, d);
      for (int i = 0; i < d; ++i) {
        l(i, i) = 0.5 + rng.next_double();
        for (int j = 0; j < i; ++j) l(i, j) = rng.next_gaussian();
      }
      const Matrix g = l * transpose(l);
      CHECK(std::abs(logdet_spd(g) - std::log(det_small(g))) <= 1e-9);
    }
    CHECK_THROWS_AS(logdet_spd(Matrix::from_rows({{1.0, 2.0}, {2.0, 1.0}})), std::domain_error);
  }
}
