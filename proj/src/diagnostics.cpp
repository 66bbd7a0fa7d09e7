#include "salc/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "salc/estimator.hpp"
#include "salc/parallel.hpp"

namespace salc {

namespace {

// Jackknife standard error of ln(mean of exp(y_i)), computed with the usual
// max-shift so the exponentials stay finite.
double jackknife_log_mean_se(const std::vector<double>& ys) {
  const size_t n = ys.size();
  double mx = ys[0];
  for (double y : ys) mx = std::max(mx, y);
  std::vector<double> e(n);
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) {
    e[i] = std::exp(ys[i] - mx);
    s += e[i];
  }
  std::vector<double> loo(n);
  double mean_loo = 0.0;
  for (size_t i = 0; i < n; ++i) {
    loo[i] = std::log((s - e[i]) / (n - 1));
    mean_loo += loo[i];
  }
  mean_loo /= n;
  double var = 0.0;
  for (size_t i = 0; i < n; ++i) var += (loo[i] - mean_loo) * (loo[i] - mean_loo);
  var *= static_cast<double>(n - 1) / n;
  return std::sqrt(var);
}

double log_mean_exp(const std::vector<double>& ys) { return logsumexp(ys) - std::log(static_cast<double>(ys.size())); }

Vector random_unit_vector(int dim, Rng& rng) {
  Vector v(dim);
  double n2 = 0.0;
  do {
    for (double& e : v) e = rng.next_gaussian();
    n2 = dot(v, v);
  } while (n2 == 0.0);
  return (1.0 / std::sqrt(n2)) * v;
}

}  // namespace

Matrix sample_perturbed_theta(const PlantConfig& cfg, double eps, Rng& rng) {
  const int n = cfg.n(), m = cfg.m();
  auto perturb = [&](const Matrix& base, int cols) {
    Matrix g(n, cols);
    for (double& e : g.entries()) e = rng.next_gaussian();
    const double s = spectral_norm(g);
    return s > 0.0 ? base + (eps / s) * g : base;
  };
  return pack_theta(perturb(cfg.A, n), perturb(cfg.B, m));
}

DriftCheckReport verify_drift(const PlantConfig& cfg, const BoundContext& ctx, double eps,
                              const Matrix& theta_perturbed, int z_samples, int inner_samples,
                              std::uint64_t seed, int threads) {
  cfg.validate();
  if (z_samples < 1 || inner_samples < 2) throw std::invalid_argument("verify_drift: sample counts too small");
  const DriftRates rates = drift_rates(ctx, eps);
  const ControllerState perturbed{theta_perturbed, cfg.sat_level(), cfg.kappa};
  const Matrix gain_true = deadbeat_gain(cfg.A, cfg.B, cfg.kappa);
  const Matrix gain_hat = deadbeat_gain(perturbed.a_hat(), perturbed.b_hat(), cfg.kappa);
  const double d_level = cfg.sat_level();

  DriftCheckReport report;
  report.lambda = rates.lambda;
  report.beta = rates.beta;
  report.epsilon = eps;
  report.samples.resize(z_samples);
  std::atomic<bool> bad_draw{false};

  par::for_indexed(z_samples, threads, [&](long zi) {
    Rng rng = Rng::derive(seed, 0x647a00 + static_cast<std::uint64_t>(zi));
    const NoiseSampler w_sampler(cfg.disturbance);
    const NoiseSampler v_sampler(cfg.excitation);

    // Half the starts land inside the contraction set (|g z| <= D scaled
    // down by a uniform factor), half strictly outside it.
    const Vector dir = random_unit_vector(cfg.n(), rng);
    const double g_dir = norm(gain_true * dir);
    const bool want_inside = (zi % 2 == 0);
    double scale;
    if (g_dir > 0.0) {
      const double boundary = d_level / g_dir;
      scale = want_inside ? boundary * rng.next_double() : boundary * (1.0 + 0.2 + 4.0 * rng.next_double());
    } else {
      scale = 1.0 + 4.0 * rng.next_double();  // |g z| = 0 <= D: inside regardless
    }
    const Vector z = scale * dir;
    const bool inside = norm(gain_true * z) <= d_level;

    const Vector ce = sat(-1.0 * (gain_hat * z), d_level);
    Vector base = ctx.sub.a_pow_kappa * z;
    const Vector rce = ctx.sub.r_star * ce;
    for (size_t i = 0; i < base.size(); ++i) base[i] += rce[i];

    std::vector<double> ys(inner_samples);
    for (int s = 0; s < inner_samples; ++s) {
      std::vector<Vector> w_block(cfg.kappa), v_block(cfg.kappa);
      for (int j = 0; j < cfg.kappa; ++j) {
        v_block[j] = v_sampler.sample(rng);
        w_block[j] = w_sampler.sample(rng);
      }
      Vector next = base + aggregate_excitation(ctx.sub, v_block) + aggregate_disturbance(ctx.sub, w_block);
      ys[s] = norm(next);
      if (!std::isfinite(ys[s])) bad_draw.store(true);
    }
    DriftSample& out = report.samples[zi];
    out.z = z;
    out.inside_contraction_set = inside;
    out.log_estimate = log_mean_exp(ys);
    out.ci_halfwidth = jackknife_log_mean_se(ys);
    out.log_bound = inside ? std::log(rates.beta) : std::log(rates.lambda) + norm(z);
  });

  if (bad_draw.load()) throw std::domain_error("verify_drift: non-finite draw, increase samples");
  for (const DriftSample& s : report.samples)
    if (s.log_estimate - 3.0 * s.ci_halfwidth > s.log_bound) ++report.violations;
  return report;
}

CoverageReport coverage_estimation_bound(const PlantConfig& cfg, const BoundContext& ctx, double delta,
                                         int trials, long horizon, const Matrix& theta0, std::uint64_t seed,
                                         int threads) {
  CoverageReport report;
  report.target_probability = 1.0 - delta;
  if (cfg.disturbance.kind == NoiseKind::zero && cfg.excitation.kind == NoiseKind::zero) {
    report.non_excited = true;  // Gram stays rank deficient; nothing to certify
    return report;
  }
  const long t0 = burn_in_time(ctx, delta, cfg.x0);
  if (horizon < t0) throw std::invalid_argument("coverage_estimation_bound: horizon is below the burn-in time");

  const Matrix theta_true = pack_theta(cfg.A, cfg.B);
  report.trials = trials;
  report.per_trial_margin.assign(trials, 0.0);
  std::vector<char> ok(trials, 0);

  // Envelope values are trial independent; precompute over [t0, horizon].
  std::vector<double> envelope(horizon - t0 + 1);
  for (long t = t0; t <= horizon; ++t) envelope[t - t0] = estimation_error_bound(ctx, t, delta, cfg.x0);

  const int kappa = cfg.kappa;
  const long horizon_tau = (horizon + kappa - 1) / kappa;
  par::for_indexed(trials, threads, [&](long trial) {
    SimOptions opts{RunMode::adaptive, theta0};
    const Trajectory traj =
        run_closed_loop(cfg, static_cast<int>(horizon_tau), Rng::derive(seed, 1 + trial).next_u64(), opts);
    OlsState ols(cfg.n(), cfg.m());
    double margin = std::numeric_limits<double>::infinity();
    bool success = true;
    for (long t = 1; t <= horizon; ++t) {
      ols_update(ols, traj.states[t - 1], traj.controls[t - 1], traj.states[t]);
      if (t < t0) continue;
      const Matrix err = ols_solve(ols) - theta_true;
      const double slack = envelope[t - t0] - spectral_norm(err);
      margin = std::min(margin, slack);
      if (slack < 0.0) success = false;
    }
    ok[trial] = success ? 1 : 0;
    report.per_trial_margin[trial] = margin;
  });
  for (int i = 0; i < trials; ++i) report.successes += ok[i];
  return report;
}

EnvelopeCoverage coverage_state_envelope(const PlantConfig& cfg, const BoundContext& ctx, double eps,
                                         double delta, int trials, const std::vector<long>& tau_checks,
                                         const Matrix& theta0, std::uint64_t seed, int threads) {
  if (tau_checks.empty()) throw std::invalid_argument("coverage_state_envelope: no check points");
  EnvelopeCoverage report;
  report.taus = tau_checks;
  report.trials = trials;
  report.target_probability = 1.0 - delta;
  report.successes.assign(tau_checks.size(), 0);
  report.mean_slack.assign(tau_checks.size(), 0.0);

  std::vector<double> envelope(tau_checks.size());
  for (size_t i = 0; i < tau_checks.size(); ++i)
    envelope[i] = state_norm_envelope(ctx, eps, delta, cfg.x0, tau_checks[i]);

  const long horizon_tau = *std::max_element(tau_checks.begin(), tau_checks.end());
  std::vector<std::vector<char>> ok(trials, std::vector<char>(tau_checks.size(), 0));
  std::vector<std::vector<double>> slack(trials, std::vector<double>(tau_checks.size(), 0.0));
  par::for_indexed(trials, threads, [&](long trial) {
    SimOptions opts{RunMode::adaptive, theta0};
    const Trajectory traj =
        run_closed_loop(cfg, static_cast<int>(std::max<long>(horizon_tau, 1)), Rng::derive(seed, 1 + trial).next_u64(), opts);
    for (size_t i = 0; i < tau_checks.size(); ++i) {
      const double xbar = norm(traj.states[static_cast<size_t>(tau_checks[i]) * cfg.kappa]);
      slack[trial][i] = envelope[i] - xbar;
      ok[trial][i] = xbar < envelope[i] ? 1 : 0;
    }
  });
  for (int t = 0; t < trials; ++t)
    for (size_t i = 0; i < tau_checks.size(); ++i) {
      report.successes[i] += ok[t][i];
      report.mean_slack[i] += slack[t][i] / trials;
    }
  return report;
}

std::vector<Vector> covariate_sequence(const Trajectory& traj) {
  std::vector<Vector> out;
  out.reserve(traj.steps());
  for (int t = 0; t < traj.steps(); ++t) {
    Vector z = traj.states[t];
    z.insert(z.end(), traj.controls[t].begin(), traj.controls[t].end());
    out.push_back(std::move(z));
  }
  return out;
}

double bmsb_proxy(const std::vector<std::vector<Vector>>& z_sequences, int k, const Matrix& gamma_sb,
                  int zeta_samples, Rng& rng) {
  if (z_sequences.empty()) throw std::invalid_argument("bmsb_proxy: no data");
  if (k < 1 || zeta_samples < 1) throw std::invalid_argument("bmsb_proxy: bad parameters");
  long usable = 0;
  for (const auto& seq : z_sequences) usable += static_cast<long>(seq.size());
  if (usable < k + 1) throw std::invalid_argument("bmsb_proxy: fewer than k+1 data points");
  const int d = gamma_sb.rows();

  double p_hat = 1.0;
  for (int zs = 0; zs < zeta_samples; ++zs) {
    const Vector zeta = random_unit_vector(d, rng);
    const double threshold = std::sqrt(dot(zeta, gamma_sb * zeta));
    double sum_frac = 0.0;
    long blocks = 0;
    for (const auto& seq : z_sequences) {
      const long len = static_cast<long>(seq.size());
      for (long j = 0; j + k <= len; ++j) {
        int hits = 0;
        for (int i = 0; i < k; ++i)
          if (std::abs(dot(zeta, seq[j + i])) >= threshold) ++hits;
        sum_frac += static_cast<double>(hits) / k;
        ++blocks;
      }
    }
    if (blocks > 0) p_hat = std::min(p_hat, sum_frac / blocks);
  }
  return p_hat;
}

}  // namespace salc
