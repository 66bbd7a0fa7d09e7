#include "salc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "salc/controller.hpp"

namespace salc {

namespace {
constexpr double kPi = 3.14159265358979323846;
// 3 * (pi^2/6 - 1), the tail-sum normalizer of the union bound over time.
const double kTailNorm = 3.0 * (kPi * kPi / 6.0 - 1.0);
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

void BmsbParams::validate() const {
  if (k < 1) throw std::invalid_argument("BmsbParams: k must be >= 1");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("BmsbParams: p must lie in (0, 1]");
  if (gamma_sb.rows() != gamma_sb.cols() || gamma_sb.rows() < 1)
    throw std::invalid_argument("BmsbParams: gamma_sb must be square");
  cholesky(gamma_sb);  // SPD or throw
}

double logsumexp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double logsumexp(const std::vector<double>& xs) {
  if (xs.empty()) return -kInf;
  double m = xs[0];
  for (double x : xs) m = std::max(m, x);
  if (m == -kInf) return -kInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

double power_diff_bound(double delta, int i, const Matrix& m) {
  if (i < 1) throw std::invalid_argument("power_diff_bound: exponent must be >= 1");
  if (delta < 0.0) throw std::invalid_argument("power_diff_bound: negative radius");
  double q = delta;
  const double norm_m = spectral_norm(m);
  Matrix pow = m;
  for (int j = 2; j <= i; ++j) {
    const double norm_pow = spectral_norm(pow);  // |m^{j-1}|
    q = q * delta + norm_pow * delta + norm_m * q;
    pow = pow * m;
  }
  return q;
}

double power_product_diff_bound(double delta, int i, const Matrix& m, const Matrix& n) {
  if (i < 0) throw std::invalid_argument("power_product_diff_bound: negative exponent");
  if (delta < 0.0) throw std::invalid_argument("power_product_diff_bound: negative radius");
  if (i == 0) return delta;
  const double q = power_diff_bound(delta, i, m);
  return q * delta + spectral_norm(matrix_power(m, i)) * delta + spectral_norm(n) * q;
}

namespace {

// Per-pair quantities reused across the chain and the bisections.
struct PairData {
  int kappa;
  Matrix A, B;
  Matrix reach;
  double norm_reach;
  double smin_gram;       // sigma_min(R R^T)
  double norm_gram_inv;   // |(R R^T)^-1| = 1 / sigma_min(R R^T)
  double norm_reach_pinv;
  double norm_a_kappa;
  double smin_gain;
};

PairData make_pair_data(int kappa, const Matrix& A, const Matrix& B) {
  const ReachabilityCheck rc = is_reachable(A, B, kappa);
  if (!rc.reachable) throw std::invalid_argument("gain perturbation chain: pair is not kappa-step reachable");
  PairData d{kappa, A, B, reachability_matrix(A, B, kappa), 0, 0, 0, 0, 0, 0};
  d.norm_reach = spectral_norm(d.reach);
  const Matrix gram = d.reach * transpose(d.reach);
  d.smin_gram = sigma_min(gram);
  d.norm_gram_inv = 1.0 / d.smin_gram;
  d.norm_reach_pinv = spectral_norm(pinv(d.reach));
  d.norm_a_kappa = spectral_norm(matrix_power(A, kappa));
  d.smin_gain = sigma_min(deadbeat_gain(A, B, kappa));
  return d;
}

double sum_power_product_bounds(double eps, const PairData& d) {
  double s = 0.0;
  for (int i = 0; i < d.kappa; ++i) s += power_product_diff_bound(eps, i, d.A, d.B);
  return s;
}

double gram_diff_of(double eps, const PairData& d) {
  const double s = sum_power_product_bounds(eps, d);
  return s * s + 2.0 * d.norm_reach * s;
}

// gain_diff as a function of eps, +inf once the chain denominator closes.
double gain_diff_of(double eps, const PairData& d) {
  const double s = sum_power_product_bounds(eps, d);
  const double gram_diff = s * s + 2.0 * d.norm_reach * s;
  const double denom = 1.0 - d.norm_gram_inv * gram_diff;
  if (denom <= 0.0) return kInf;
  const double gram_inv_diff = d.norm_gram_inv * d.norm_gram_inv * gram_diff / denom;
  const double pinv_diff = s * gram_inv_diff + d.norm_reach * gram_inv_diff + d.norm_gram_inv * s;
  const double pow_diff = power_diff_bound(eps, d.kappa, d.A);
  return pinv_diff * pow_diff + d.norm_reach_pinv * pow_diff + d.norm_a_kappa * pinv_diff;
}

// Root of the nondecreasing map f on [0, hi_start-expansion), to relative
// tolerance 1e-12. f(0) must sit below the target.
double bisect_root(double target, double hi0, const std::function<double(double)>& f) {
  double lo = 0.0, hi = hi0;
  int expand = 0;
  while (f(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (++expand > 200) throw std::domain_error("gain perturbation chain: no finite critical radius");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-12 * hi) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

GainPerturbBounds gain_perturb_bounds(double eps, int kappa, const Matrix& A, const Matrix& B) {
  if (eps < 0.0) throw std::invalid_argument("gain_perturb_bounds: negative radius");
  const PairData d = make_pair_data(kappa, A, B);
  GainPerturbBounds out;
  const double s = sum_power_product_bounds(eps, d);
  out.gram_diff = s * s + 2.0 * d.norm_reach * s;
  const double denom = 1.0 - d.norm_gram_inv * out.gram_diff;
  if (denom <= 0.0) throw std::domain_error("gain_perturb_bounds: epsilon too large");
  out.gram_inv_diff = d.norm_gram_inv * d.norm_gram_inv * out.gram_diff / denom;
  out.pinv_diff = s * out.gram_inv_diff + d.norm_reach * out.gram_inv_diff + d.norm_gram_inv * s;
  const double pow_diff = power_diff_bound(eps, kappa, A);
  out.gain_diff = out.pinv_diff * pow_diff + d.norm_reach_pinv * pow_diff + d.norm_a_kappa * out.pinv_diff;
  return out;
}

double gain_perturb_radius(int kappa, const Matrix& A, const Matrix& B) {
  const PairData d = make_pair_data(kappa, A, B);
  if (!(d.smin_gain > 0.0))
    throw std::domain_error("gain_perturb_radius: gain has zero smallest singular value, no positive radius");
  const double root_gram = bisect_root(d.smin_gram, 1.0, [&](double e) { return gram_diff_of(e, d); });
  const double root_gain =
      bisect_root(d.smin_gain, std::min(1.0, root_gram), [&](double e) { return gain_diff_of(e, d); });
  return std::min(root_gram, root_gain);
}

double sat_control_gap(double eps, double r, int kappa, const Matrix& A, const Matrix& B) {
  const double radius = gain_perturb_radius(kappa, A, B);
  if (!(eps < radius)) throw std::domain_error("sat_control_gap: eps must lie below the perturbation radius");
  const PairData d = make_pair_data(kappa, A, B);
  const double gd = gain_diff_of(eps, d);
  return 2.0 * r * gd / (d.smin_gain - gd);
}

SatGapConstants sat_gap_constants(int kappa, const Matrix& A, const Matrix& B) {
  const double q1 = gain_perturb_radius(kappa, A, B);
  const PairData d = make_pair_data(kappa, A, B);
  const double gd_half = gain_diff_of(q1 / 2.0, d);
  const double denom = d.smin_gain - gd_half;
  if (!(denom > 0.0)) throw std::domain_error("sat_gap_constants: degenerate pair");
  SatGapConstants c;
  c.radius = q1 / 2.0;
  c.slope = 4.0 * gd_half / (q1 * denom);
  return c;
}

double scalar_uniform_log_mgf(double map_times_c) {
  if (map_times_c == 0.0) return 0.0;
  const double a = std::abs(map_times_c);
  return std::log(std::expm1(a) / a);
}

MgfEstimate log_mgf_estimate(const NoiseSpec& spec, const Matrix& map, long samples, Rng& rng) {
  MgfEstimate out;
  out.samples = samples;
  if (spec.kind == NoiseKind::zero) return out;  // exp(0) exactly
  if (samples < 1000) throw std::invalid_argument("log_mgf_estimate: need at least 1000 samples");
  if (map.cols() % spec.dim != 0) throw std::invalid_argument("log_mgf_estimate: map width not a multiple of the noise dimension");
  const int blocks = map.cols() / spec.dim;
  const NoiseSampler sampler(spec);

  std::vector<double> ys(samples);
  Vector stacked(map.cols());
  for (long s = 0; s < samples; ++s) {
    int off = 0;
    for (int b = 0; b < blocks; ++b) {
      const Vector draw = sampler.sample(rng);
      for (double e : draw) stacked[off++] = e;
    }
    ys[s] = norm(map * stacked);
    if (!std::isfinite(ys[s])) throw std::domain_error("log_mgf_estimate: non-finite draw");
  }
  double mx = ys[0];
  for (double y : ys) mx = std::max(mx, y);
  double s1 = 0.0, s2 = 0.0;
  for (double y : ys) {
    const double e = std::exp(y - mx);
    s1 += e;
    s2 += e * e;
  }
  const double mean_scaled = s1 / samples;
  const double var_scaled = std::max(0.0, s2 / samples - mean_scaled * mean_scaled);
  out.value = mx + std::log(mean_scaled);
  // delta method: sd(ln mean) ~= sd(mean) / mean, invariant to the exp(mx)
  // scaling.
  out.ci_halfwidth = 1.96 * std::sqrt(var_scaled / samples) / mean_scaled;
  return out;
}

BoundContext build_bound_context(const PlantConfig& cfg, const BmsbParams& bmsb, long mgf_samples,
                                 std::uint64_t seed) {
  cfg.validate();
  bmsb.validate();
  if (bmsb.gamma_sb.rows() != cfg.n() + cfg.m())
    throw std::invalid_argument("build_bound_context: gamma_sb must be (n+m) x (n+m)");
  BoundContext ctx;
  ctx.plant = cfg;
  ctx.sub = build_subsampled_context(cfg);
  ctx.bmsb = bmsb;
  ctx.sat_gap = sat_gap_constants(cfg.kappa, cfg.A, cfg.B);
  ctx.perturb_radius = 2.0 * ctx.sat_gap.radius;

  Rng rng_v = Rng::derive(seed, 0x6d67665f76ull);  // "mgf_v"
  Rng rng_w = Rng::derive(seed, 0x6d67665f77ull);  // "mgf_w"
  if (cfg.n() == 1 && cfg.m() == 1 && cfg.kappa == 1 && cfg.excitation.kind == NoiseKind::uniform_ball) {
    ctx.m_v_bar = scalar_uniform_log_mgf(std::abs(cfg.B(0, 0)) * cfg.excitation.bound);
    ctx.m_v_bar_ci = 0.0;
  } else {
    const MgfEstimate mv = log_mgf_estimate(cfg.excitation, ctx.sub.r_star, mgf_samples, rng_v);
    ctx.m_v_bar = mv.value;
    ctx.m_v_bar_ci = mv.ci_halfwidth;
  }
  const MgfEstimate mw = log_mgf_estimate(cfg.disturbance, ctx.sub.w_stack_map, mgf_samples, rng_w);
  ctx.m_w_bar = mw.value;
  ctx.m_w_bar_ci = mw.ci_halfwidth;

  const Matrix sigma_w = cfg.disturbance.effective_covariance();
  ctx.sigma_sq = sym_eig_bounds(sigma_w).second;
  double tr_w = 0.0;
  for (int i = 0; i < sigma_w.rows(); ++i) tr_w += sigma_w(i, i);
  ctx.trace_sigma_w = tr_w;
  const Matrix sigma_v = cfg.excitation.effective_covariance();
  double tr_v = 0.0;
  for (int i = 0; i < sigma_v.rows(); ++i) tr_v += sigma_v(i, i);
  ctx.trace_sigma_v = tr_v;
  ctx.norm_b = spectral_norm(cfg.B);
  return ctx;
}

MarginReport check_margin(const BoundContext& ctx) {
  MarginReport r;
  r.lhs = ctx.drift_margin_lhs();
  r.rhs = ctx.drift_margin_rhs();
  r.satisfied = r.lhs > r.rhs;
  return r;
}

DriftRates drift_rates(const BoundContext& ctx, double eps) {
  if (!(eps >= 0.0 && eps <= ctx.sat_gap.radius))
    throw std::invalid_argument("drift_rates: eps must lie in [0, sat_gap.radius]");
  const double d = ctx.sat_level();
  const double common = ctx.sub.norm_r * ctx.sat_gap.slope * d * eps + ctx.m_v_bar + ctx.m_w_bar;
  DriftRates r;
  r.epsilon = eps;
  r.lambda = std::exp(common - d / ctx.sub.norm_r_pinv);
  r.beta = std::exp(common);
  return r;
}

double admissible_eps_max(const BoundContext& ctx) {
  const MarginReport m = check_margin(ctx);
  if (!m.satisfied) throw std::domain_error("admissible_eps_max: drift margin violated, no admissible eps");
  const double d = ctx.sat_level();
  const double threshold = (m.lhs - m.rhs) / (ctx.sub.norm_r * ctx.sat_gap.slope * d);
  return std::min(ctx.sat_gap.radius, threshold);
}

namespace {

struct CurvePieces {
  int d;                  // n + m
  double lam_min, lam_max;  // extreme eigenvalues of gamma_sb
  double logdet_gamma;
  double k1, k2, k4_sq, k5;
  double c1_const_no_x0;  // 2(D^2 + tr Sigma_V) + lambda_max
  double c1_quad;         // 4(|B|^2 (D^2 + tr Sigma_V) + tr Sigma_W)
};

CurvePieces curve_pieces(const BoundContext& ctx) {
  CurvePieces p;
  p.d = ctx.plant.n() + ctx.plant.m();
  const auto eig = sym_eig_bounds(ctx.bmsb.gamma_sb);
  p.lam_min = eig.first;
  p.lam_max = eig.second;
  p.logdet_gamma = logdet_spd(ctx.bmsb.gamma_sb);
  const double pp = ctx.bmsb.p;
  p.k1 = 10.0 * ctx.bmsb.k / (pp * pp);
  p.k2 = 2.0 * p.d * std::log(10.0 / pp);
  p.k4_sq = 8100.0 * ctx.sigma_sq / (pp * pp);
  p.k5 = ctx.plant.n() + p.d * std::log(10.0 / pp);
  const double dd = ctx.sat_level();
  const double du = dd * dd + ctx.trace_sigma_v;
  p.c1_const_no_x0 = 2.0 * du + p.lam_max;
  p.c1_quad = 4.0 * (ctx.norm_b * ctx.norm_b * du + ctx.trace_sigma_w);
  return p;
}

double c1_of(const CurvePieces& p, double x0_sq, double t) { return 4.0 * x0_sq + p.c1_const_no_x0 + p.c1_quad * t * t; }

// Interior of the burn-in sample-size condition at time t:
//   ln(f1 (t+1)^2) + k2 + ln det(f1 (t+1)^2 c1(t) gamma^-1).
double burn_in_rhs(const CurvePieces& p, double delta, double x0_sq, double t) {
  const double log_scalar = std::log(kTailNorm / delta) + 2.0 * std::log(t + 1.0);
  const double logdet_term = p.d * (log_scalar + std::log(c1_of(p, x0_sq, t))) - p.logdet_gamma;
  return p.k1 * (log_scalar + p.k2 + logdet_term);
}

// Envelope value at time t: (90 sigma / p) sqrt(interior / (t lambda_min))
// with interior = k5 + ln det(f1 (t+1)^2 c1(t) gamma^-1) + ln(f1 (t+1)^2).
double error_curve(const CurvePieces& p, double delta, double x0_sq, double t) {
  const double log_scalar = std::log(kTailNorm / delta) + 2.0 * std::log(t + 1.0);
  const double logdet_term = p.d * (log_scalar + std::log(c1_of(p, x0_sq, t))) - p.logdet_gamma;
  const double interior = p.k5 + logdet_term + log_scalar;
  return std::sqrt(p.k4_sq * interior / (t * p.lam_min));
}

double x0_norm_sq(const BoundContext& ctx, const Vector& x0) {
  if (static_cast<int>(x0.size()) != ctx.plant.n())
    throw std::invalid_argument("bound evaluation: x0 dimension mismatch");
  return dot(x0, x0);
}

// f3(x0) = c1 evaluated with the quadratic time factor collapsed to 1.
double f3_of(const CurvePieces& p, double x0_sq) { return 4.0 * x0_sq + p.c1_const_no_x0 + p.c1_quad; }

// Sufficient burn-in cap: beyond 2 k3 ln(2 k3) - 2 k3 + 1 + 2 f4 the
// sample-size condition holds for every t (tangent-line bound on the log).
double burn_in_cap(const CurvePieces& p, double delta, double x0_sq) {
  const double k3 = p.k1 * (4.0 * p.d + 2.0);
  const double f4 =
      p.k1 * ((p.d + 1.0) * std::log(kTailNorm / delta) + p.k2 + p.d * std::log(f3_of(p, x0_sq)) - p.logdet_gamma);
  return 2.0 * k3 * std::log(2.0 * k3) - 2.0 * k3 + 1.0 + 2.0 * std::max(0.0, f4);
}

// Sufficient cap on the first time from which the error envelope stays below
// eps, same tangent-line construction.
double error_tail_cap(const CurvePieces& p, double delta, double x0_sq, double eps) {
  const double scale = p.k4_sq / (eps * eps * p.lam_min);
  const double k6 = scale * (4.0 * p.d + 2.0);
  const double f5 = scale * (p.k5 + (p.d + 1.0) * std::log(kTailNorm / delta) + p.d * std::log(f3_of(p, x0_sq)) -
                             p.logdet_gamma);
  return 2.0 * k6 * std::log(2.0 * k6) - 2.0 * k6 + 1.0 + 2.0 * std::max(0.0, f5);
}

}  // namespace

double estimation_error_bound(const BoundContext& ctx, long T, double delta, const Vector& x0) {
  if (T < 1) throw std::invalid_argument("estimation_error_bound: T must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("estimation_error_bound: delta must lie in (0, 1)");
  const CurvePieces p = curve_pieces(ctx);
  return error_curve(p, delta, x0_norm_sq(ctx, x0), static_cast<double>(T));
}

long burn_in_time(const BoundContext& ctx, double delta, const Vector& x0) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("burn_in_time: delta must lie in (0, 1)");
  const CurvePieces p = curve_pieces(ctx);
  const double x0_sq = x0_norm_sq(ctx, x0);
  const long cap = static_cast<long>(std::ceil(burn_in_cap(p, delta, x0_sq)));
  for (long t = std::max<long>(cap, 1); t >= 1; --t) {
    if (static_cast<double>(t) < burn_in_rhs(p, delta, x0_sq, static_cast<double>(t))) return t + 1;
  }
  return 1;
}

long stabilization_time(const BoundContext& ctx, double eps, double delta, const Vector& x0) {
  if (!(eps > 0.0 && eps <= ctx.sat_gap.radius))
    throw std::invalid_argument("stabilization_time: eps must lie in (0, sat_gap.radius]");
  const long kappa = ctx.plant.kappa;
  const long t0 = burn_in_time(ctx, delta, x0);
  const long tau_burn_in = std::max<long>(1, (t0 + kappa - 1) / kappa);

  if (ctx.sigma_sq == 0.0) return tau_burn_in;  // error envelope is identically zero

  const CurvePieces p = curve_pieces(ctx);
  const double x0_sq = x0_norm_sq(ctx, x0);
  const double cap_raw = error_tail_cap(p, delta, x0_sq, eps);
  const long cap_tau = static_cast<long>(std::ceil(cap_raw / kappa)) + 1;
  if (error_curve(p, delta, x0_sq, static_cast<double>(kappa * cap_tau)) > eps)
    throw std::domain_error("stabilization_time: envelope never settles below eps within the analytic cap");
  long tau_tail = 1;
  for (long i = cap_tau; i >= 1; --i) {
    if (error_curve(p, delta, x0_sq, static_cast<double>(kappa * i)) > eps) {
      tau_tail = i + 1;
      break;
    }
  }
  return std::max(tau_burn_in, tau_tail);
}

double StabilizationTimeBound::l2(const Vector& x0) const {
  const double f3 = 4.0 * dot(x0, x0) + f3_affine;
  const double l4 = factor * (bracket_const + d * std::log(f3));
  return (l3 + l4) / kappa;
}

StabilizationTimeBound stabilization_time_bound(const BoundContext& ctx, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("stabilization_time_bound: eps must be positive");
  const CurvePieces p = curve_pieces(ctx);
  StabilizationTimeBound b;
  const double k3 = p.k1 * (4.0 * p.d + 2.0);
  const double scale = p.k4_sq / (eps * eps * p.lam_min);
  const double k6 = scale * (4.0 * p.d + 2.0);
  b.l3 = std::max(2.0 * k3 * std::log(2.0 * k3) - 2.0 * k3 + 1.0,
                  2.0 * k6 * std::log(2.0 * k6) - 2.0 * k6 + 1.0);
  b.factor = std::max(p.k1, scale);
  b.bracket_const = (p.d + 1.0) * std::log(kTailNorm) + std::max(p.k5, p.k2);
  b.f3_affine = p.c1_const_no_x0 + p.c1_quad;
  b.d = p.d;
  b.kappa = ctx.plant.kappa;
  b.l1 = b.factor * (p.d + 1.0) / ctx.plant.kappa;
  return b;
}

double log_transient_constant(const BoundContext& ctx, double eps, double delta, const Vector& x0) {
  const DriftRates r = drift_rates(ctx, eps);
  if (!(r.lambda < 1.0)) throw std::domain_error("log_transient_constant: contraction rate is not below one");
  const long tau0 = stabilization_time(ctx, eps, delta, x0);
  const double per_block = ctx.sub.norm_r * ctx.sat_level() + ctx.m_v_bar + ctx.m_w_bar + std::log(1.0 / r.lambda);
  return norm(x0) + static_cast<double>(tau0) * per_block;
}

double state_norm_envelope(const BoundContext& ctx, double eps, double delta, const Vector& x0, long tau) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("state_norm_envelope: delta must lie in (0, 1)");
  if (!(eps > 0.0 && eps < admissible_eps_max(ctx)))
    throw std::domain_error("state_norm_envelope: eps outside the admissible interval");
  if (tau < 0) throw std::invalid_argument("state_norm_envelope: tau must be nonnegative");
  const DriftRates r = drift_rates(ctx, eps);
  const double log_k = log_transient_constant(ctx, eps, delta / 2.0, x0);
  const double transient = log_k + static_cast<double>(tau) * std::log(r.lambda);
  const double steady = std::log(r.beta) - std::log1p(-r.lambda);
  return std::log(2.0 / delta) + logsumexp(transient, steady);
}

EnvelopeConstants envelope_constants(const BoundContext& ctx, const Vector& x0) {
  const double eps = admissible_eps_max(ctx) / 2.0;
  const DriftRates r = drift_rates(ctx, eps);
  const StabilizationTimeBound b = stabilization_time_bound(ctx, eps);
  const double per_block = ctx.sub.norm_r * ctx.sat_level() + ctx.m_v_bar + ctx.m_w_bar + std::log(1.0 / r.lambda);
  EnvelopeConstants c;
  c.epsilon = eps;
  c.lambda = r.lambda;
  c.n1 = per_block * b.l1;
  c.log_n2 = norm(x0) + per_block * b.l2(x0);
  c.n3 = r.beta / (1.0 - r.lambda);
  return c;
}

double simplified_envelope(const EnvelopeConstants& c, double delta, long tau) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("simplified_envelope: delta must lie in (0, 1)");
  const double transient = c.log_n2 + c.n1 * std::log(2.0 / delta) + static_cast<double>(tau) * std::log(c.lambda);
  return std::log(2.0 / delta) + logsumexp(transient, std::log(c.n3));
}

double worst_case_log_moment(const BoundContext& ctx, const Vector& x0, long tau) {
  if (tau < 0) throw std::invalid_argument("worst_case_log_moment: tau must be nonnegative");
  return norm(x0) + static_cast<double>(tau) * (ctx.sub.norm_r * ctx.sat_level() + ctx.m_v_bar + ctx.m_w_bar);
}

double varying_error_envelope(const BoundContext& ctx, const std::vector<double>& h, long tau0, long tau,
                              double gamma, double log_moment_tau0) {
  if (!(tau > tau0)) throw std::invalid_argument("varying_error_envelope: tau must exceed tau0");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("varying_error_envelope: gamma must lie in (0, 1)");
  if (static_cast<long>(h.size()) != tau - tau0)
    throw std::invalid_argument("varying_error_envelope: profile length must be tau - tau0");
  const size_t len = h.size();
  std::vector<double> log_lambda(len), log_beta(len);
  for (size_t i = 0; i < len; ++i) {
    if (!(h[i] >= 0.0 && h[i] <= ctx.sat_gap.radius))
      throw std::invalid_argument("varying_error_envelope: profile entry outside [0, sat_gap.radius]");
    const DriftRates r = drift_rates(ctx, h[i]);
    log_lambda[i] = std::log(r.lambda);
    log_beta[i] = std::log(r.beta);
  }
  // suffix[i] = sum of log lambda over j > i
  std::vector<double> suffix(len + 1, 0.0);
  for (size_t i = len; i-- > 0;) suffix[i] = suffix[i + 1] + log_lambda[i];
  std::vector<double> terms;
  terms.reserve(len + 1);
  terms.push_back(log_moment_tau0 + suffix[0]);
  for (size_t i = 0; i < len; ++i) terms.push_back(log_beta[i] + suffix[i + 1]);
  return std::log(1.0 / gamma) + logsumexp(terms);
}

}  // namespace salc
