#pragma once

#include <string>
#include <vector>

#include "salc/matrix.hpp"
#include "salc/rng.hpp"

namespace salc {

enum class NoiseKind { zero, gaussian, uniform_ball };

// Noise model for disturbances and excitations. Gaussian draws use the
// Cholesky factor of `covariance`; uniform_ball draws are uniform on the
// closed Euclidean ball of radius `bound` (direction times radius with
// radius ~ bound * u^{1/dim}, so no rejection loop).
struct NoiseSpec {
  NoiseKind kind = NoiseKind::zero;
  int dim = 0;
  Matrix covariance;   // gaussian only; dim x dim SPD (or zero)
  double bound = 0.0;  // uniform_ball only; hard norm cap on every draw

  static NoiseSpec zero_noise(int dim);
  static NoiseSpec gaussian(Matrix covariance);
  static NoiseSpec uniform_ball(int dim, double bound);

  // Covariance of one draw. For uniform_ball this is the closed form
  // (bound^2 / (dim + 2)) * I.
  Matrix effective_covariance() const;
  void validate() const;
};

class NoiseSampler {
 public:
  explicit NoiseSampler(const NoiseSpec& spec);
  Vector sample(Rng& rng) const;
  const NoiseSpec& spec() const { return spec_; }

 private:
  NoiseSpec spec_;
  Matrix chol_;  // gaussian factor, empty otherwise
};

Vector sample_noise(const NoiseSpec& spec, Rng& rng);

// The plant x+ = A x + B u + w together with the controller inputs that
// drive it: block length kappa, control cap u_max, excitation level c_level
// (so the certainty-equivalent part is capped at u_max - c_level).
struct PlantConfig {
  Matrix A;  // n x n
  Matrix B;  // n x m
  int kappa = 1;
  NoiseSpec disturbance;  // dim n
  NoiseSpec excitation;   // dim m
  double u_max = 1.0;
  double c_level = 0.0;
  Vector x0;

  int n() const { return A.rows(); }
  int m() const { return B.cols(); }
  double sat_level() const { return u_max - c_level; }
  void validate() const;
};

// [B, AB, ..., A^{kappa-1} B], n x kappa*m.
Matrix reachability_matrix(const Matrix& A, const Matrix& B, int kappa);

struct ReachabilityCheck {
  bool reachable = false;
  double sigma_min = 0.0;
};
// Full row rank test on the reachability matrix. The threshold separates
// genuine rank deficiency from rounding: sigma_min > 1e-8 * max(1, norm).
ReachabilityCheck is_reachable(const Matrix& A, const Matrix& B, int kappa);

Vector plant_step(const Matrix& A, const Matrix& B, const Vector& x, const Vector& u, const Vector& w);

// Quantities of the kappa-step sub-sampled loop
//   xbar+ = A^kappa xbar + R sat_D(-g xbar) + vbar + wbar,
// where R is the reachability matrix, vbar = R * (stacked excitations,
// newest first) and wbar = [I, A, ..., A^{kappa-1}] * (stacked disturbances,
// newest first).
struct SubsampledContext {
  int kappa = 1;
  Matrix r_star;       // n x kappa*m
  Matrix a_pow_kappa;  // n x n
  Matrix w_stack_map;  // n x kappa*n, [I, A, ..., A^{kappa-1}]
  double norm_r = 0.0;
  double norm_r_pinv = 0.0;
};

SubsampledContext build_subsampled_context(const PlantConfig& cfg);

// Blocks are given newest first: block[0] is the draw at the last raw step
// of the sub-sample period.
Vector aggregate_disturbance(const SubsampledContext& ctx, const std::vector<Vector>& w_block);
Vector aggregate_excitation(const SubsampledContext& ctx, const std::vector<Vector>& v_block);

// One closed-loop run: states X_0..X_T, controls/excitations/disturbances
// U_0..U_{T-1}, and the per-block parameter estimate used at each block.
struct Trajectory {
  std::vector<Vector> states;
  std::vector<Vector> controls;
  std::vector<Vector> excitations;
  std::vector<Vector> disturbances;
  std::vector<Matrix> estimates;  // estimates[tau] = theta used during block tau

  int steps() const { return static_cast<int>(controls.size()); }
};

}  // namespace salc
