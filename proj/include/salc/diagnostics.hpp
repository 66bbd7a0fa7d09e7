#pragma once

#include <cstdint>
#include <vector>

#include "salc/bounds.hpp"
#include "salc/controller.hpp"
#include "salc/matrix.hpp"

namespace salc {

// Monte Carlo tally of a probabilistic claim. The success fraction is
// reported alongside the target so callers decide what to assert.
struct CoverageReport {
  long trials = 0;
  long successes = 0;
  double target_probability = 0.0;
  std::vector<double> per_trial_margin;  // worst slack across checked indices
  bool non_excited = false;              // both noise sources are identically zero

  double success_fraction() const { return trials > 0 ? static_cast<double>(successes) / trials : 0.0; }
};

// One sampled start point of the one-block drift check.
struct DriftSample {
  Vector z;
  bool inside_contraction_set = false;  // |g z| <= D, boundary counts as inside
  double log_estimate = 0.0;            // ln of the Monte Carlo moment estimate
  double ci_halfwidth = 0.0;            // jackknife half-width on the log scale
  double log_bound = 0.0;               // ln(beta) inside, ln(lambda) + |z| outside
};

struct DriftCheckReport {
  std::vector<DriftSample> samples;
  double lambda = 0.0, beta = 0.0, epsilon = 0.0;
  long violations = 0;  // estimate - 3 * ci exceeds the bound
};

// One-block conditional moment check of the frozen-estimate loop
//   z+ = A^k z + R sat_D(-gbar z) + vbar + wbar
// with gbar built from theta_perturbed (inside the eps-ball of the truth).
// For each start z sampled around the contraction set boundary, estimates
// ln E[exp|z+|] by Monte Carlo and compares against the drift bound.
DriftCheckReport verify_drift(const PlantConfig& cfg, const BoundContext& ctx, double eps,
                              const Matrix& theta_perturbed, int z_samples, int inner_samples,
                              std::uint64_t seed, int threads = 0);

// Draws an estimate uniformly-in-direction on the radius-eps sphere around
// the true parameters.
Matrix sample_perturbed_theta(const PlantConfig& cfg, double eps, Rng& rng);

// Per trial, runs the closed loop and requires the estimation error to stay
// below the envelope at every time in [burn-in, horizon].
CoverageReport coverage_estimation_bound(const PlantConfig& cfg, const BoundContext& ctx, double delta,
                                         int trials, long horizon, const Matrix& theta0, std::uint64_t seed,
                                         int threads = 0);

struct EnvelopeCoverage {
  std::vector<long> taus;
  std::vector<long> successes;  // per tau
  std::vector<double> mean_slack;  // envelope minus observed, per tau
  long trials = 0;
  double target_probability = 0.0;
};

// Per trial and per checked block index, requires |xbar_tau| to stay below
// the state-norm envelope.
EnvelopeCoverage coverage_state_envelope(const PlantConfig& cfg, const BoundContext& ctx, double eps,
                                         double delta, int trials, const std::vector<long>& tau_checks,
                                         const Matrix& theta0, std::uint64_t seed, int threads = 0);

// Unconditional small-ball proxy: over sampled unit directions zeta, the
// block-averaged frequency of |zeta' z| >= sqrt(zeta' gamma_sb zeta),
// minimized over zeta. A surrogate for the conditional definition, which is
// not empirically accessible; labeled "proxy" wherever surfaced.
double bmsb_proxy(const std::vector<std::vector<Vector>>& z_sequences, int k, const Matrix& gamma_sb,
                  int zeta_samples, Rng& rng);

// State-input covariates z_t = (x_{t-1}, u_{t-1}) of a recorded run.
std::vector<Vector> covariate_sequence(const Trajectory& traj);

}  // namespace salc
