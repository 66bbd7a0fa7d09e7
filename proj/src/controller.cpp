#include "salc/controller.hpp"

#include <cmath>

#include "salc/estimator.hpp"

namespace salc {

Vector sat(const Vector& x, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("sat: radius must be positive");
  const double nx = norm(x);
  if (nx <= r) return x;
  return (r / nx) * x;
}

Matrix deadbeat_gain(const Matrix& A_hat, const Matrix& B_hat, int kappa) {
  return pinv(reachability_matrix(A_hat, B_hat, kappa)) * matrix_power(A_hat, kappa);
}

Matrix ControllerState::a_hat() const {
  const int n = theta_bar.rows();
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = theta_bar(i, j);
  return a;
}

Matrix ControllerState::b_hat() const {
  const int n = theta_bar.rows();
  const int m = theta_bar.cols() - n;
  Matrix b(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) b(i, j) = theta_bar(i, n + j);
  return b;
}

Matrix pack_theta(const Matrix& a_hat, const Matrix& b_hat) {
  if (a_hat.rows() != a_hat.cols() || b_hat.rows() != a_hat.rows())
    throw std::invalid_argument("pack_theta: shape mismatch");
  return hcat({a_hat, b_hat});
}

BlockControl block_control(const ControllerState& state, const Vector& x_bar,
                           const std::vector<Vector>& v_block_newest_first) {
  const int kappa = state.kappa;
  if (static_cast<int>(v_block_newest_first.size()) != kappa)
    throw std::invalid_argument("block_control: excitation block length must equal kappa");
  const Matrix gain = deadbeat_gain(state.a_hat(), state.b_hat(), kappa);
  const Vector ce = sat(-1.0 * (gain * x_bar), state.sat_level);
  const int m = static_cast<int>(ce.size()) / kappa;

  BlockControl out;
  out.ce_part = ce;
  out.controls.assign(kappa, Vector(m, 0.0));
  // Stack row 0 holds the final step of the block; forward-time slot j reads
  // stacked block kappa-1-j.
  for (int j = 0; j < kappa; ++j) {
    const int blk = kappa - 1 - j;
    const Vector& v = v_block_newest_first[blk];
    if (static_cast<int>(v.size()) != m) throw std::invalid_argument("block_control: excitation dimension mismatch");
    for (int i = 0; i < m; ++i) out.controls[j][i] = ce[blk * m + i] + v[i];
  }
  return out;
}

Trajectory run_closed_loop(const PlantConfig& cfg, int horizon_tau, std::uint64_t seed, const SimOptions& opts) {
  cfg.validate();
  if (horizon_tau < 1) throw std::invalid_argument("run_closed_loop: horizon must be at least one block");
  const int n = cfg.n(), m = cfg.m(), kappa = cfg.kappa;
  const bool controlled = opts.mode != RunMode::uncontrolled;

  if (controlled) {
    if (opts.theta0.rows() != n || opts.theta0.cols() != n + m)
      throw std::invalid_argument("run_closed_loop: theta0 must be n x (n+m)");
    double b0 = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = n; j < n + m; ++j) b0 += std::abs(opts.theta0(i, j));
    if (b0 == 0.0) throw std::invalid_argument("run_closed_loop: initial input matrix estimate must be nonzero");
  }

  Rng rng(seed);
  const NoiseSampler w_sampler(cfg.disturbance);
  const NoiseSampler v_sampler(cfg.excitation);

  Trajectory traj;
  traj.states.reserve(static_cast<size_t>(horizon_tau) * kappa + 1);
  traj.controls.reserve(static_cast<size_t>(horizon_tau) * kappa);
  traj.excitations.reserve(traj.controls.capacity());
  traj.disturbances.reserve(traj.controls.capacity());
  traj.estimates.reserve(horizon_tau);
  traj.states.push_back(cfg.x0);

  OlsState ols(n, m);
  ControllerState ctrl{opts.theta0, cfg.sat_level(), kappa};
  Vector x = cfg.x0;
  const Vector zero_u(m, 0.0);

  for (int tau = 0; tau < horizon_tau; ++tau) {
    std::vector<Vector> v_forward(kappa, zero_u);
    std::vector<Vector> controls(kappa, zero_u);
    if (controlled) {
      traj.estimates.push_back(ctrl.theta_bar);
      for (int j = 0; j < kappa; ++j) v_forward[j] = v_sampler.sample(rng);
      std::vector<Vector> v_newest_first(v_forward.rbegin(), v_forward.rend());
      controls = block_control(ctrl, x, v_newest_first).controls;
    }

    for (int j = 0; j < kappa; ++j) {
      const Vector w = w_sampler.sample(rng);
      const Vector x_next = plant_step(cfg.A, cfg.B, x, controls[j], w);
      ols_update(ols, x, controls[j], x_next);
      traj.controls.push_back(controls[j]);
      traj.excitations.push_back(v_forward[j]);
      traj.disturbances.push_back(w);
      traj.states.push_back(x_next);
      x = x_next;
    }

    if (opts.mode == RunMode::adaptive) ctrl.theta_bar = ols_solve(ols);
  }
  return traj;
}

}  // namespace salc
