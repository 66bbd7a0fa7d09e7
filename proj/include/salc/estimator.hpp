#pragma once

#include "salc/matrix.hpp"
#include "salc/system.hpp"

namespace salc {

// Sufficient statistics of the least-squares problem
//   minimize over theta:  sum_s | x_s - theta z_s |^2,   z_s = (x_{s-1}, u_{s-1}).
// Gram and cross-moment sums are exact for OLS and need O(1) memory per
// update.
struct OlsState {
  Matrix gram;   // (n+m) x (n+m), sum of z z^T
  Matrix cross;  // n x (n+m), sum of x_next z^T
  double sum_xx = 0.0;
  long count = 0;

  OlsState() = default;
  OlsState(int n, int m) : gram(n + m, n + m), cross(n, n + m) {}
};

void ols_update(OlsState& state, const Vector& x_prev, const Vector& u_prev, const Vector& x_next);

// theta_hat = cross * pinv(gram): the unique minimizer when the Gram matrix
// is nonsingular, and the pinv (minimum-norm) minimizer otherwise.
Matrix ols_solve(const OlsState& state);

// Residual sum of squares at theta, reconstructed from the sufficient
// statistics.
double ols_objective(const OlsState& state, const Matrix& theta);

// Estimate after exactly kappa*tau transitions of a recorded trajectory;
// tau = 0 returns the supplied initial estimate, which is never fit.
Matrix subsampled_estimate(const Trajectory& traj, const Matrix& theta0, int kappa, int tau);

}  // namespace salc
