#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace salc {

using Vector = std::vector<double>;

// Dense row-major real matrix. Sizes in this project are single-digit, so
// everything is stored and computed densely.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
  }
  Matrix(int rows, int cols, std::vector<double> entries) : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != static_cast<size_t>(rows) * cols)
      throw std::invalid_argument("Matrix: entry count does not match dimensions");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  const std::vector<double>& entries() const { return a_; }
  std::vector<double>& entries() { return a_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Vector operator*(const Matrix& a, const Vector& x);

Matrix transpose(const Matrix& m);
Matrix matrix_power(const Matrix& m, int k);

// Stacks blocks left-to-right: [b0 b1 ... ].
Matrix hcat(const std::vector<Matrix>& blocks);

double dot(const Vector& a, const Vector& b);
double norm(const Vector& x);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& x);

// Thin SVD m = u * diag(sigma) * v^T with sigma descending. Computed by
// one-sided Jacobi on the side with fewer columns, which is plenty accurate
// at the sizes seen here.
struct Svd {
  Matrix u;                   // rows x r
  std::vector<double> sigma;  // r = min(rows, cols), descending
  Matrix v;                   // cols x r
};
Svd svd(const Matrix& m);

double spectral_norm(const Matrix& m);
double sigma_min(const Matrix& m);

// Moore-Penrose pseudoinverse. Singular values below 1e-9 * sigma_max are
// treated as zero.
Matrix pinv(const Matrix& m);

// Extreme eigenvalues of a symmetric matrix (cyclic Jacobi). Throws if the
// asymmetry exceeds 1e-12 relative to the largest entry.
std::pair<double, double> sym_eig_bounds(const Matrix& m);

// Cholesky factor of an SPD matrix; throws std::domain_error if a pivot
// fails.
Matrix cholesky(const Matrix& m);

// ln det of an SPD matrix via Cholesky.
double logdet_spd(const Matrix& m);

}  // namespace salc
