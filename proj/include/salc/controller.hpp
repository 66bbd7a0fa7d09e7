#pragma once

#include <cstdint>
#include <vector>

#include "salc/matrix.hpp"
#include "salc/system.hpp"

namespace salc {

// Radial projection onto the closed norm ball of radius r.
Vector sat(const Vector& x, double r);

// Certainty-equivalent deadbeat gain g = pinv(R_kappa(A_hat, B_hat)) * A_hat^kappa,
// of shape kappa*m x n. Rank-deficient estimates are fine: pinv truncation
// yields a finite gain and saturation caps the control either way.
Matrix deadbeat_gain(const Matrix& A_hat, const Matrix& B_hat, int kappa);

// Current estimate theta = [A_hat, B_hat] (n x (n+m)) plus the block
// controller's saturation level and period.
struct ControllerState {
  Matrix theta_bar;
  double sat_level = 0.0;
  int kappa = 1;

  Matrix a_hat() const;
  Matrix b_hat() const;
};

Matrix pack_theta(const Matrix& a_hat, const Matrix& b_hat);

// One block of controls. The stacked control is
//   [u at step kappa*(tau+1)-1; ...; u at step kappa*tau]
//     = sat_D(-g x_bar) + [v newest; ...; v oldest],
// i.e. newest entries on top. `controls` is returned unstacked in forward
// time order (controls[0] applies first); `ce_part` is the saturated CE
// component for diagnostics.
struct BlockControl {
  std::vector<Vector> controls;
  Vector ce_part;
};

BlockControl block_control(const ControllerState& state, const Vector& x_bar,
                           const std::vector<Vector>& v_block_newest_first);

enum class RunMode { adaptive, frozen, uncontrolled };

struct SimOptions {
  RunMode mode = RunMode::adaptive;
  // Initial estimate [A0, B0]; in frozen mode the estimate stays at this
  // value for the whole run. B0 must be nonzero when the gain is used.
  Matrix theta0;
};

// Full closed-loop run over `horizon_tau` blocks (kappa * horizon_tau raw
// steps): per block, sample excitations, compute the block control from the
// current estimate, apply the raw plant steps, and refresh the least-squares
// estimate from all transitions seen so far. Uncontrolled runs apply u = 0
// with no excitation.
Trajectory run_closed_loop(const PlantConfig& cfg, int horizon_tau, std::uint64_t seed, const SimOptions& opts);

}  // namespace salc
