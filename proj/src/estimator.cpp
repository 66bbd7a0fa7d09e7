#include "salc/estimator.hpp"

namespace salc {

void ols_update(OlsState& state, const Vector& x_prev, const Vector& u_prev, const Vector& x_next) {
  const int n = state.cross.rows();
  const int d = state.gram.rows();
  if (static_cast<int>(x_prev.size() + u_prev.size()) != d || static_cast<int>(x_next.size()) != n)
    throw std::invalid_argument("ols_update: dimension mismatch");
  Vector z;
  z.reserve(d);
  z.insert(z.end(), x_prev.begin(), x_prev.end());
  z.insert(z.end(), u_prev.begin(), u_prev.end());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) state.gram(i, j) += z[i] * z[j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) state.cross(i, j) += x_next[i] * z[j];
  state.sum_xx += dot(x_next, x_next);
  state.count += 1;
}

Matrix ols_solve(const OlsState& state) {
  if (state.count < 1) throw std::invalid_argument("ols_solve: no data");
  return state.cross * pinv(state.gram);
}

double ols_objective(const OlsState& state, const Matrix& theta) {
  // sum |x - theta z|^2 = sum|x|^2 - 2 tr(theta cross^T) + tr(theta gram theta^T)
  const Matrix tg = theta * state.gram;
  double obj = state.sum_xx;
  for (int i = 0; i < theta.rows(); ++i)
    for (int j = 0; j < theta.cols(); ++j) obj += theta(i, j) * (tg(i, j) - 2.0 * state.cross(i, j));
  return obj;
}

Matrix subsampled_estimate(const Trajectory& traj, const Matrix& theta0, int kappa, int tau) {
  if (tau == 0) return theta0;
  const int transitions = kappa * tau;
  if (transitions > traj.steps()) throw std::invalid_argument("subsampled_estimate: not enough recorded transitions");
  const int n = static_cast<int>(traj.states[0].size());
  const int m = static_cast<int>(traj.controls[0].size());
  OlsState state(n, m);
  for (int t = 0; t < transitions; ++t) ols_update(state, traj.states[t], traj.controls[t], traj.states[t + 1]);
  return ols_solve(state);
}

}  // namespace salc
