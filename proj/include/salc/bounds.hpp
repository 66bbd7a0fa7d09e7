#pragma once

#include <cstdint>
#include <vector>

#include "salc/matrix.hpp"
#include "salc/rng.hpp"
#include "salc/system.hpp"

namespace salc {

// Anti-concentration constants assumed for the state-input data sequence:
// over any length-k block, each unit direction keeps probability mass at
// least p beyond the sqrt(zeta' gamma_sb zeta) threshold. These are
// configuration inputs, never derived.
struct BmsbParams {
  int k = 1;
  Matrix gamma_sb;  // (n+m) x (n+m) SPD
  double p = 0.0;
  void validate() const;
};

double logsumexp(double a, double b);
double logsumexp(const std::vector<double>& xs);

// ---------------------------------------------------------------------------
// Matrix perturbation chain. Everything below bounds how far the deadbeat
// gain g(A', B') can move when (A', B') stays within a spectral-norm eps-ball
// of (A, B).

// Bound on |M2^i - M1^i| over all M2 within delta of M1 (i >= 1):
//   delta                                             i = 1
//   q(i-1) delta + |M1^{i-1}| delta + |M1| q(i-1)     i >= 2.
double power_diff_bound(double delta, int i, const Matrix& m);

// Bound on |M2^i N2 - M1^i N1| over the same balls (i >= 0): delta at i = 0,
// else power_diff_bound * delta + |M1^i| delta + |N1| power_diff_bound.
double power_product_diff_bound(double delta, int i, const Matrix& m, const Matrix& n);

// The four coupled scalars bounding, in order: the reachability-matrix
// difference (gram_diff bounds |R2 R2' - R1 R1'|), the inverse-gram
// difference, the pseudoinverse difference, and the gain difference itself.
struct GainPerturbBounds {
  double gain_diff = 0.0;      // |g2 - g1|
  double gram_diff = 0.0;      // |R2 R2^T - R1 R1^T|
  double pinv_diff = 0.0;      // |R2^+ - R1^+|
  double gram_inv_diff = 0.0;  // |(R2 R2^T)^-1 - (R1 R1^T)^-1|
};
// Throws std::domain_error("epsilon too large") once the inverse-gram
// denominator 1 - |(R R^T)^-1| * gram_diff stops being positive.
GainPerturbBounds gain_perturb_bounds(double eps, int kappa, const Matrix& A, const Matrix& B);

// Largest radius on which the whole chain stays valid: the smaller of the
// roots of gram_diff(eps) = sigma_min(R R^T) and gain_diff(eps) =
// sigma_min(g), each located by bisection (both maps are continuous and
// nondecreasing in eps). Relative tolerance 1e-12.
double gain_perturb_radius(int kappa, const Matrix& A, const Matrix& B);

// Uniform-over-states bound on |sat_r(-g2 x) - sat_r(-g1 x)| for estimates
// within an eps-ball, eps < gain_perturb_radius:
//   2 r gain_diff / (sigma_min(g) - gain_diff).
double sat_control_gap(double eps, double r, int kappa, const Matrix& A, const Matrix& B);

// Linearized form of the gap bound: for all eps <= radius the gap is at most
// slope * r * eps. radius is half the perturbation radius.
struct SatGapConstants {
  double radius = 0.0;  // largest admissible estimate error (m_q)
  double slope = 0.0;   // gap growth rate per unit eps (M_q)
};
SatGapConstants sat_gap_constants(int kappa, const Matrix& A, const Matrix& B);

// ---------------------------------------------------------------------------
// Exponential-moment constants of the aggregated per-block noise.

struct MgfEstimate {
  double value = 0.0;          // ln E[exp |map * stacked draws|]
  double ci_halfwidth = 0.0;   // 1.96 delta-method half-width on the log scale
  long samples = 0;
};

// Monte Carlo estimate of ln E[exp(|map * stack|)] where stack concatenates
// map.cols()/spec.dim independent draws of spec. Accumulated with
// log-sum-exp; zero noise returns 0 exactly.
MgfEstimate log_mgf_estimate(const NoiseSpec& spec, const Matrix& map, long samples, Rng& rng);

// Exact value for the scalar uniform law on [-c, c] with a 1x1 map:
// ln((exp(|map| c) - 1) / (|map| c)).
double scalar_uniform_log_mgf(double map_times_c);

// ---------------------------------------------------------------------------
// Everything the envelope formulas need, derived once per configuration.

struct BoundContext {
  PlantConfig plant;
  SubsampledContext sub;
  BmsbParams bmsb;
  double m_v_bar = 0.0;  // ln E[exp |vbar|]
  double m_w_bar = 0.0;  // ln E[exp |wbar|]
  double m_v_bar_ci = 0.0;
  double m_w_bar_ci = 0.0;
  SatGapConstants sat_gap;  // radius = m_q, slope = M_q
  double perturb_radius = 0.0;
  double sigma_sq = 0.0;  // lambda_max of the disturbance covariance
  double trace_sigma_v = 0.0;
  double trace_sigma_w = 0.0;
  double norm_b = 0.0;

  double sat_level() const { return plant.sat_level(); }
  double drift_margin_lhs() const { return plant.sat_level() / sub.norm_r_pinv; }
  double drift_margin_rhs() const { return m_v_bar + m_w_bar; }
};

BoundContext build_bound_context(const PlantConfig& cfg, const BmsbParams& bmsb, long mgf_samples,
                                 std::uint64_t seed);

struct MarginReport {
  bool satisfied = false;
  double lhs = 0.0;  // D / |R^+|
  double rhs = 0.0;  // sum of the log-MGF constants
};
MarginReport check_margin(const BoundContext& ctx);

// One-block contraction rates of the sub-sampled loop:
//   lambda = exp(|R| slope D eps - D/|R^+| + m_v_bar + m_w_bar)
//   beta   = exp(|R| slope D eps           + m_v_bar + m_w_bar)
// so lambda / beta = exp(-D/|R^+|) identically.
struct DriftRates {
  double lambda = 0.0;
  double beta = 0.0;
  double epsilon = 0.0;
};
DriftRates drift_rates(const BoundContext& ctx, double eps);

// Upper end of the eps interval on which lambda(eps) < 1; requires the
// margin to be satisfied. Envelope evaluations accept any eps in
// (0, admissible_eps_max).
double admissible_eps_max(const BoundContext& ctx);

// High-probability estimation error envelope at time T for confidence
// 1 - delta, decaying like sqrt(log T / T).
double estimation_error_bound(const BoundContext& ctx, long T, double delta, const Vector& x0);

// First time from which the finite-sample estimation bound applies: the
// minimal index such that the sample-size condition holds at it and every
// later time. Located by scanning down from a sufficient analytic cap.
long burn_in_time(const BoundContext& ctx, double delta, const Vector& x0);

// First block index tau from which (a) kappa*tau clears the burn-in time and
// (b) the estimation envelope at confidence 1 - delta stays below eps.
long stabilization_time(const BoundContext& ctx, double eps, double delta, const Vector& x0);

// Closed-form affine-in-log(1/delta) upper bound on stabilization_time:
// tau <= l2(x0) + l1 * ln(1/delta).
struct StabilizationTimeBound {
  double l1 = 0.0;
  double l2(const Vector& x0) const;

  // pieces fixed by the context and eps
  double l3 = 0.0;
  double factor = 0.0;
  double bracket_const = 0.0;
  double f3_affine = 0.0;
  int d = 0;
  int kappa = 1;
};
StabilizationTimeBound stabilization_time_bound(const BoundContext& ctx, double eps);

// ln of the transient prefactor of the state-norm envelope:
//   |x0| + tau0'(eps, delta, x0) * (|R| D + m_v_bar + m_w_bar + ln(1/lambda)).
// Kept in the log domain because the linear form routinely exceeds 1e5.
double log_transient_constant(const BoundContext& ctx, double eps, double delta, const Vector& x0);

// High-probability bound on |xbar_tau| at confidence 1 - delta:
//   ln(2/delta) + ln(K(eps, delta/2, x0) lambda^tau + beta / (1 - lambda)).
double state_norm_envelope(const BoundContext& ctx, double eps, double delta, const Vector& x0, long tau);

// Constants of the simplified envelope ln(N2 (2/delta)^N1 lambda^tau + N3) +
// ln(2/delta), with eps fixed at the midpoint of the admissible interval.
struct EnvelopeConstants {
  double n1 = 0.0;
  double log_n2 = 0.0;  // ln N2(x0)
  double n3 = 0.0;
  double lambda = 0.0;
  double epsilon = 0.0;
};
EnvelopeConstants envelope_constants(const BoundContext& ctx, const Vector& x0);
double simplified_envelope(const EnvelopeConstants& c, double delta, long tau);

// ln E[exp |xbar_tau|] <= |x0| + tau (|R| D + m_v_bar + m_w_bar), valid with
// no estimation assumptions at all.
double worst_case_log_moment(const BoundContext& ctx, const Vector& x0, long tau);

// Envelope under a general per-block error profile h(tau0), ..., h(tau-1),
// each entry in [0, sat_gap.radius]:
//   ln(1/gamma) + ln(E[exp |xbar_tau0|] prod lambda(h_i)
//                    + sum_i beta(h_i) prod_{j>i} lambda(h_j)).
double varying_error_envelope(const BoundContext& ctx, const std::vector<double>& h, long tau0, long tau,
                              double gamma, double log_moment_tau0);

}  // namespace salc
