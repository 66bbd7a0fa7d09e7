#include "salc/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace salc {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r) {
    if (rows[r].size() != static_cast<size_t>(m.cols()))
      throw std::invalid_argument("Matrix::from_rows: ragged rows");
    for (int c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
  Matrix out = a;
  for (size_t i = 0; i < out.entries().size(); ++i) out.entries()[i] += b.entries()[i];
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference: shape mismatch");
  Matrix out = a;
  for (size_t i = 0; i < out.entries().size(); ++i) out.entries()[i] -= b.entries()[i];
  return out;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix out = a;
  for (double& e : out.entries()) e *= s;
  return out;
}

Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols() != static_cast<int>(x.size())) throw std::invalid_argument("matrix-vector product: shape mismatch");
  Vector out(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    out[i] = s;
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

Matrix matrix_power(const Matrix& m, int k) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_power: square matrix required");
  if (k < 0) throw std::invalid_argument("matrix_power: negative exponent");
  Matrix out = Matrix::identity(m.rows());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

Matrix hcat(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) return Matrix();
  int cols = 0;
  for (const Matrix& b : blocks) {
    if (b.rows() != blocks[0].rows()) throw std::invalid_argument("hcat: row counts differ");
    cols += b.cols();
  }
  Matrix out(blocks[0].rows(), cols);
  int off = 0;
  for (const Matrix& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) out(i, off + j) = b(i, j);
    off += b.cols();
  }
  return out;
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& x) { return std::sqrt(dot(x, x)); }

Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sum: length mismatch");
  Vector out = a;
  for (size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector difference: length mismatch");
  Vector out = a;
  for (size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

Vector operator*(double s, const Vector& x) {
  Vector out = x;
  for (double& e : out) e *= s;
  return out;
}

namespace {

// One-sided Jacobi: orthogonalize the columns of b in place, accumulating
// the rotations into v. On exit b = u * diag(sigma) with v holding the
// right singular vectors.
void one_sided_jacobi(Matrix& b, Matrix& v) {
  const int n = b.cols();
  const int rows = b.rows();
  constexpr double kTol = 1e-15;
  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (int i = 0; i < rows; ++i) {
          app += b(i, p) * b(i, p);
          aqq += b(i, q) * b(i, q);
          apq += b(i, p) * b(i, q);
        }
        if (std::abs(apq) <= kTol * std::sqrt(app * aqq) || apq == 0.0) continue;
        rotated = true;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < rows; ++i) {
          const double bp = b(i, p), bq = b(i, q);
          b(i, p) = c * bp - s * bq;
          b(i, q) = s * bp + c * bq;
        }
        for (int i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
}

}  // namespace

Svd svd(const Matrix& m) {
  if (m.empty()) return {Matrix(), {}, Matrix()};
  const bool flip = m.rows() < m.cols();
  Matrix b = flip ? transpose(m) : m;  // rows >= cols
  Matrix v = Matrix::identity(b.cols());
  one_sided_jacobi(b, v);

  const int r = b.cols();
  std::vector<int> order(r);
  std::vector<double> sig(r);
  for (int j = 0; j < r; ++j) {
    double s = 0.0;
    for (int i = 0; i < b.rows(); ++i) s += b(i, j) * b(i, j);
    sig[j] = std::sqrt(s);
    order[j] = j;
  }
  std::sort(order.begin(), order.end(), [&](int a, int c) { return sig[a] > sig[c]; });

  Matrix u(b.rows(), r), vt(v.rows(), r);
  std::vector<double> sigma(r);
  for (int j = 0; j < r; ++j) {
    const int src = order[j];
    sigma[j] = sig[src];
    const double inv = sig[src] > 0.0 ? 1.0 / sig[src] : 0.0;
    for (int i = 0; i < b.rows(); ++i) u(i, j) = b(i, src) * inv;
    for (int i = 0; i < v.rows(); ++i) vt(i, j) = v(i, src);
  }
  if (flip) return {vt, sigma, u};
  return {u, sigma, vt};
}

double spectral_norm(const Matrix& m) {
  if (m.empty()) return 0.0;
  return svd(m).sigma.front();
}

double sigma_min(const Matrix& m) {
  if (m.empty()) return 0.0;
  return svd(m).sigma.back();
}

Matrix pinv(const Matrix& m) {
  if (m.empty()) return transpose(m);
  Svd d = svd(m);
  const double cutoff = 1e-9 * d.sigma.front();
  Matrix out(m.cols(), m.rows());
  for (size_t k = 0; k < d.sigma.size(); ++k) {
    if (d.sigma[k] <= cutoff) continue;
    const double inv = 1.0 / d.sigma[k];
    for (int i = 0; i < m.cols(); ++i)
      for (int j = 0; j < m.rows(); ++j) out(i, j) += d.v(i, static_cast<int>(k)) * inv * d.u(j, static_cast<int>(k));
  }
  return out;
}

std::pair<double, double> sym_eig_bounds(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("sym_eig_bounds: square matrix required");
  double scale = 1.0, asym = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      scale = std::max(scale, std::abs(m(i, j)));
      asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
    }
  if (asym > 1e-12 * scale) throw std::invalid_argument("sym_eig_bounds: matrix is not symmetric");

  Matrix a = m;
  const int n = a.rows();
  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= 1e-15 * scale) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double zeta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
      }
    }
  }
  double lo = a(0, 0), hi = a(0, 0);
  for (int i = 1; i < n; ++i) {
    lo = std::min(lo, a(i, i));
    hi = std::max(hi, a(i, i));
  }
  return {lo, hi};
}

Matrix cholesky(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("cholesky: square matrix required");
  const int n = m.rows();
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (s <= 0.0) throw std::domain_error("cholesky: matrix is not positive definite");
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return l;
}

double logdet_spd(const Matrix& m) {
  Matrix l = cholesky(m);
  double s = 0.0;
  for (int i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

}  // namespace salc
