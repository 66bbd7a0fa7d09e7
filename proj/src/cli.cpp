#include "salc/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "salc/diagnostics.hpp"
#include "salc/estimator.hpp"

namespace salc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument(std::string("config: ") + what + " must be a matrix");
  std::vector<std::vector<double>> rows;
  for (const auto& row : j) rows.push_back(row.get<std::vector<double>>());
  return Matrix::from_rows(rows);
}

json noise_to_json(const NoiseSpec& s) {
  json j;
  j["dim"] = s.dim;
  switch (s.kind) {
    case NoiseKind::zero:
      j["kind"] = "zero";
      break;
    case NoiseKind::gaussian:
      j["kind"] = "gaussian";
      j["covariance"] = matrix_to_json(s.covariance);
      break;
    case NoiseKind::uniform_ball:
      j["kind"] = "uniform_ball";
      j["bound"] = s.bound;
      break;
  }
  return j;
}

NoiseSpec noise_from_json(const json& j, const char* what) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return NoiseSpec::zero_noise(j.at("dim").get<int>());
  if (kind == "gaussian") return NoiseSpec::gaussian(matrix_from_json(j.at("covariance"), "covariance"));
  if (kind == "uniform_ball") return NoiseSpec::uniform_ball(j.at("dim").get<int>(), j.at("bound").get<double>());
  throw std::invalid_argument(std::string("config: unknown noise kind in ") + what);
}

std::string mode_to_string(RunMode m) {
  switch (m) {
    case RunMode::adaptive:
      return "adaptive";
    case RunMode::frozen:
      return "frozen_truth";
    case RunMode::uncontrolled:
      return "uncontrolled";
  }
  return "adaptive";
}

RunMode mode_from_string(const std::string& s) {
  if (s == "adaptive") return RunMode::adaptive;
  if (s == "frozen_truth") return RunMode::frozen;
  if (s == "uncontrolled") return RunMode::uncontrolled;
  throw std::invalid_argument("config: unknown mode '" + s + "'");
}

}  // namespace

RunSpec load_run_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;

  RunSpec spec;
  ExperimentConfig& e = spec.experiment;
  const json& p = j.at("plant");
  e.plant.A = matrix_from_json(p.at("A"), "A");
  e.plant.B = matrix_from_json(p.at("B"), "B");
  e.plant.kappa = p.at("kappa").get<int>();
  e.plant.u_max = p.at("u_max").get<double>();
  e.plant.c_level = p.at("c_level").get<double>();
  e.plant.x0 = p.at("x0").get<std::vector<double>>();
  e.plant.disturbance = noise_from_json(p.at("disturbance"), "disturbance");
  e.plant.excitation = noise_from_json(p.at("excitation"), "excitation");
  e.plant.validate();

  e.name = j.value("name", std::string("experiment"));
  e.trials = j.value("trials", 100);
  e.horizon = j.value("horizon", 1000L);
  e.master_seed = j.value("seed", 1ULL);
  e.mode = mode_from_string(j.value("mode", std::string("adaptive")));
  if (j.contains("theta0")) e.theta0 = matrix_from_json(j.at("theta0"), "theta0");

  if (j.contains("bmsb")) {
    spec.has_bmsb = true;
    BmsbParams b;
    b.k = j.at("bmsb").at("k").get<int>();
    b.p = j.at("bmsb").at("p").get<double>();
    b.gamma_sb = matrix_from_json(j.at("bmsb").at("gamma_sb"), "gamma_sb");
    b.validate();
    e.bmsb = b;
  }

  if (j.contains("check")) {
    const json& c = j.at("check");
    spec.check.delta = c.value("delta", spec.check.delta);
    spec.check.coverage_trials = c.value("coverage_trials", spec.check.coverage_trials);
    spec.check.coverage_horizon = c.value("coverage_horizon", spec.check.coverage_horizon);
    spec.check.drift_z_samples = c.value("drift_z_samples", spec.check.drift_z_samples);
    spec.check.drift_inner_samples = c.value("drift_inner_samples", spec.check.drift_inner_samples);
    if (c.contains("tau_multipliers")) spec.check.tau_multipliers = c.at("tau_multipliers").get<std::vector<long>>();
    spec.check.mgf_samples = c.value("mgf_samples", spec.check.mgf_samples);
    spec.check.bmsb_zeta_samples = c.value("bmsb_zeta_samples", spec.check.bmsb_zeta_samples);
    spec.check.bmsb_trials = c.value("bmsb_trials", spec.check.bmsb_trials);
    if (c.contains("report_deltas")) spec.check.report_deltas = c.at("report_deltas").get<std::vector<double>>();
    if (c.contains("report_tau_multipliers"))
      spec.check.report_tau_multipliers = c.at("report_tau_multipliers").get<std::vector<long>>();
  }
  return spec;
}

namespace {

json spec_to_json_impl(const RunSpec& spec) {
  const ExperimentConfig& e = spec.experiment;
  json j;
  j["name"] = e.name;
  j["plant"] = {{"A", matrix_to_json(e.plant.A)},
                {"B", matrix_to_json(e.plant.B)},
                {"kappa", e.plant.kappa},
                {"u_max", e.plant.u_max},
                {"c_level", e.plant.c_level},
                {"x0", e.plant.x0},
                {"disturbance", noise_to_json(e.plant.disturbance)},
                {"excitation", noise_to_json(e.plant.excitation)}};
  j["trials"] = e.trials;
  j["horizon"] = e.horizon;
  j["seed"] = e.master_seed;
  j["mode"] = mode_to_string(e.mode);
  if (!e.theta0.empty()) j["theta0"] = matrix_to_json(e.theta0);
  if (e.bmsb) {
    j["bmsb"] = {{"k", e.bmsb->k}, {"p", e.bmsb->p}, {"gamma_sb", matrix_to_json(e.bmsb->gamma_sb)}};
  }
  j["check"] = {{"delta", spec.check.delta},
                {"coverage_trials", spec.check.coverage_trials},
                {"coverage_horizon", spec.check.coverage_horizon},
                {"drift_z_samples", spec.check.drift_z_samples},
                {"drift_inner_samples", spec.check.drift_inner_samples},
                {"tau_multipliers", spec.check.tau_multipliers},
                {"mgf_samples", spec.check.mgf_samples},
                {"bmsb_zeta_samples", spec.check.bmsb_zeta_samples},
                {"bmsb_trials", spec.check.bmsb_trials},
                {"report_deltas", spec.check.report_deltas},
                {"report_tau_multipliers", spec.check.report_tau_multipliers}};
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

void write_manifest(const std::string& dir, const RunSpec& spec, const std::string& command,
                    const std::vector<std::string>& outputs) {
  json m;
  m["command"] = command;
  m["config"] = spec_to_json_impl(spec);
  m["outputs"] = outputs;
  write_text_file(dir + "/manifest.json", m.dump(2) + "\n");
}

std::string trial_file_name(int trial) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "trial_%04d.csv", trial);
  return buf;
}

int cmd_simulate(const RunSpec& spec, const std::string& out_dir, int threads) {
  fs::create_directories(out_dir);
  fs::create_directories(out_dir + "/trials");
  const ExperimentResult result = run_experiment(spec.experiment, threads);
  std::vector<std::string> outputs = {"series.csv"};
  write_series_csv(out_dir + "/series.csv", result.series);
  for (int i = 0; i < spec.experiment.trials; ++i) {
    const std::string name = "trials/" + trial_file_name(i);
    write_trial_csv(out_dir + "/" + name, result.trajectories[i]);
    outputs.push_back(name);
  }
  RunSpec echoed = spec;
  echoed.experiment.theta0 = result.theta0;  // make the run exactly reproducible
  write_manifest(out_dir, echoed, "simulate", outputs);
  std::cout << "simulate: wrote " << spec.experiment.trials << " trials to " << out_dir << "\n";
  return 0;
}

int cmd_figure1(std::uint64_t seed, const std::string& out_dir, int threads) {
  fs::create_directories(out_dir);
  const Figure1Data data = figure1_suite(seed, threads);
  std::vector<std::string> outputs;
  for (size_t i = 0; i < data.labels.size(); ++i) {
    const std::string name = data.labels[i] + ".csv";
    write_series_csv(out_dir + "/" + name, data.series[i]);
    outputs.push_back(name);
  }
  json m;
  m["command"] = "figure1";
  m["seed"] = seed;
  m["trials"] = 100;
  m["horizon"] = 1000;
  m["outputs"] = outputs;
  write_text_file(out_dir + "/manifest.json", m.dump(2) + "\n");
  std::cout << "figure1: wrote " << outputs.size() << " series to " << out_dir << "\n";
  return 0;
}

int cmd_figure2(std::uint64_t seed, const std::string& out_dir, int threads) {
  fs::create_directories(out_dir);
  const Figure2Data data = figure2_suite(seed, threads);
  std::vector<std::string> outputs;
  json x0s = json::array();
  for (size_t i = 0; i < data.series.size(); ++i) {
    const std::string name = "x0_" + std::to_string(i) + ".csv";
    write_series_csv(out_dir + "/" + name, data.series[i]);
    outputs.push_back(name);
    x0s.push_back(data.x0_set[i]);
  }
  json m;
  m["command"] = "figure2";
  m["seed"] = seed;
  m["trials"] = 100;
  m["horizon"] = 1000;
  m["x0_set"] = x0s;
  m["outputs"] = outputs;
  write_text_file(out_dir + "/manifest.json", m.dump(2) + "\n");
  std::cout << "figure2: wrote " << outputs.size() << " series to " << out_dir << "\n";
  return 0;
}

int cmd_bounds(const RunSpec& spec, const std::string& out_file) {
  if (!spec.has_bmsb) throw std::runtime_error("bounds: config must provide bmsb parameters");
  const PlantConfig& plant = spec.experiment.plant;
  const BoundContext ctx =
      build_bound_context(plant, *spec.experiment.bmsb, spec.check.mgf_samples, spec.experiment.master_seed);
  const MarginReport margin = check_margin(ctx);
  const ReachabilityCheck reach = is_reachable(plant.A, plant.B, plant.kappa);
  const double delta = spec.check.delta;
  const Vector& x0 = plant.x0;

  json r;
  r["name"] = spec.experiment.name;
  r["delta"] = delta;
  r["x0"] = x0;
  r["reachable"] = reach.reachable;
  r["sigma_min_reach"] = reach.sigma_min;
  r["norm_R"] = ctx.sub.norm_r;
  r["norm_R_pinv"] = ctx.sub.norm_r_pinv;
  r["norm_B"] = ctx.norm_b;
  r["sigma_sq"] = ctx.sigma_sq;
  r["trace_sigma_v"] = ctx.trace_sigma_v;
  r["trace_sigma_w"] = ctx.trace_sigma_w;
  r["q1"] = ctx.perturb_radius;
  r["m_q"] = ctx.sat_gap.radius;
  r["M_q"] = ctx.sat_gap.slope;
  r["M_V_bar"] = {{"value", ctx.m_v_bar}, {"ci_halfwidth", ctx.m_v_bar_ci}};
  r["M_W_bar"] = {{"value", ctx.m_w_bar}, {"ci_halfwidth", ctx.m_w_bar_ci}};
  r["assumption_margin"] = {{"lhs", margin.lhs}, {"rhs", margin.rhs}, {"satisfied", margin.satisfied}};
  const DriftRates at_zero = drift_rates(ctx, 0.0);
  r["lambda_at_zero"] = at_zero.lambda;
  r["beta_at_zero"] = at_zero.beta;
  r["admissible"] = margin.satisfied;

  if (margin.satisfied) {
    const double eps = admissible_eps_max(ctx) / 2.0;
    const DriftRates rates = drift_rates(ctx, eps);
    const long t0 = burn_in_time(ctx, delta, x0);
    const long tau0 = stabilization_time(ctx, eps, delta, x0);
    const StabilizationTimeBound stb = stabilization_time_bound(ctx, eps);
    const EnvelopeConstants env = envelope_constants(ctx, x0);
    r["epsilon"] = eps;
    r["lambda"] = rates.lambda;
    r["beta"] = rates.beta;
    r["T0"] = t0;
    r["tau0_prime"] = tau0;
    r["ln_K"] = log_transient_constant(ctx, eps, delta / 2.0, x0);
    r["L1"] = stb.l1;
    r["L2_x0"] = stb.l2(x0);
    r["N1"] = env.n1;
    r["ln_N2"] = env.log_n2;
    r["N3"] = env.n3;
    json envelopes = json::array();
    for (double d : spec.check.report_deltas) {
      for (long mult : spec.check.report_tau_multipliers) {
        const long tau = mult * tau0;
        envelopes.push_back({{"delta", d},
                             {"tau", tau},
                             {"state_norm_envelope", state_norm_envelope(ctx, eps, d, x0, tau)},
                             {"simplified_envelope", simplified_envelope(env, d, tau)}});
      }
    }
    r["envelopes"] = envelopes;
  }

  const std::string text = r.dump(2) + "\n";
  if (out_file.empty())
    std::cout << text;
  else
    write_text_file(out_file, text);
  return 0;
}

int cmd_check(const RunSpec& spec, const std::string& out_dir, int threads, bool inject_fault) {
  const PlantConfig& plant = spec.experiment.plant;
  if (!spec.has_bmsb) throw std::runtime_error("check: config must provide bmsb parameters");
  if (!out_dir.empty()) fs::create_directories(out_dir);
  const CheckSettings& cs = spec.check;
  const std::uint64_t seed = spec.experiment.master_seed;
  const BoundContext ctx = build_bound_context(plant, *spec.experiment.bmsb, cs.mgf_samples, seed);
  const Matrix theta_true = pack_theta(plant.A, plant.B);
  // Fault injection for self-test: pretend the drift bounds are far tighter
  // than computed, which must trip the violation path.
  const double fault_offset = inject_fault ? -4.0 : 0.0;
  long violations = 0;
  json summary;

  // Drift suite: frozen truth at eps 0, and a perturbed estimate at half the
  // admissible gap radius.
  {
    json drift = json::array();
    for (const double eps : {0.0, ctx.sat_gap.radius / 2.0}) {
      Matrix theta = theta_true;
      if (eps > 0.0) {
        Rng rng = Rng::derive(seed, 0x7065727475ull);  // "pertu"
        theta = sample_perturbed_theta(plant, eps, rng);
      }
      const DriftCheckReport rep =
          verify_drift(plant, ctx, eps, theta, cs.drift_z_samples, cs.drift_inner_samples, seed, threads);
      long fails = 0;
      for (const DriftSample& s : rep.samples)
        if (s.log_estimate - 3.0 * s.ci_halfwidth > s.log_bound + fault_offset) ++fails;
      violations += fails;
      drift.push_back({{"epsilon", eps},
                       {"lambda", rep.lambda},
                       {"beta", rep.beta},
                       {"z_samples", cs.drift_z_samples},
                       {"inner_samples", cs.drift_inner_samples},
                       {"violations", fails}});
    }
    summary["drift"] = drift;
  }

  // Estimation coverage.
  {
    long horizon = cs.coverage_horizon;
    const long t0 = burn_in_time(ctx, cs.delta, plant.x0);
    if (horizon <= 0) horizon = t0 + std::max<long>(500, t0 / 10);
    const Matrix theta0 =
        spec.experiment.theta0.empty() ? draw_theta0(plant.n(), plant.m(), seed) : spec.experiment.theta0;
    const CoverageReport rep =
        coverage_estimation_bound(plant, ctx, cs.delta, cs.coverage_trials, horizon, theta0, seed, threads);
    const bool ok = rep.non_excited || rep.success_fraction() >= rep.target_probability;
    if (!ok) ++violations;
    summary["estimation_coverage"] = {{"trials", rep.trials},
                                      {"successes", rep.successes},
                                      {"fraction", rep.success_fraction()},
                                      {"target", rep.target_probability},
                                      {"burn_in", t0},
                                      {"horizon", horizon},
                                      {"non_excited", rep.non_excited}};
  }

  // State-norm envelope coverage, when an admissible eps exists.
  if (check_margin(ctx).satisfied) {
    const double eps = admissible_eps_max(ctx) / 2.0;
    const long tau0 = stabilization_time(ctx, eps, cs.delta / 2.0, plant.x0);
    std::vector<long> taus;
    for (long mult : cs.tau_multipliers) taus.push_back(mult * tau0);
    const Matrix theta0 =
        spec.experiment.theta0.empty() ? draw_theta0(plant.n(), plant.m(), seed) : spec.experiment.theta0;
    const EnvelopeCoverage rep =
        coverage_state_envelope(plant, ctx, eps, cs.delta, cs.coverage_trials, taus, theta0, seed, threads);
    json per_tau = json::array();
    for (size_t i = 0; i < rep.taus.size(); ++i) {
      const double frac = static_cast<double>(rep.successes[i]) / rep.trials;
      if (frac < rep.target_probability) ++violations;
      per_tau.push_back({{"tau", rep.taus[i]},
                         {"successes", rep.successes[i]},
                         {"fraction", frac},
                         {"mean_slack", rep.mean_slack[i]}});
    }
    summary["envelope_coverage"] = {{"epsilon", eps}, {"trials", rep.trials}, {"per_tau", per_tau}};
  } else {
    summary["envelope_coverage"] = {{"skipped", "drift margin violated, no admissible eps"}};
  }

  summary["violations"] = violations;
  summary["fault_injected"] = inject_fault;
  const std::string text = summary.dump(2) + "\n";
  if (!out_dir.empty()) write_text_file(out_dir + "/check_report.json", text);
  std::cout << text;
  return violations > 0 ? 1 : 0;
}

int cmd_diagnose(const RunSpec& spec, const std::string& out_dir, int threads) {
  const PlantConfig& plant = spec.experiment.plant;
  if (!out_dir.empty()) fs::create_directories(out_dir);
  const CheckSettings& cs = spec.check;
  const std::uint64_t seed = spec.experiment.master_seed;

  // Short batch of closed-loop runs for the data-dependent diagnostics.
  ExperimentConfig batch = spec.experiment;
  batch.trials = cs.bmsb_trials;
  batch.horizon = std::min<long>(spec.experiment.horizon, 2000);
  const ExperimentResult result = run_experiment(batch, threads);

  long cap_violations = 0;
  double max_u = 0.0;
  for (const Trajectory& traj : result.trajectories)
    for (const Vector& u : traj.controls) {
      max_u = std::max(max_u, norm(u));
      if (norm(u) > plant.u_max + 1e-12) ++cap_violations;
    }

  json r;
  const ReachabilityCheck reach = is_reachable(plant.A, plant.B, plant.kappa);
  r["reachability"] = {{"reachable", reach.reachable}, {"sigma_min", reach.sigma_min}};
  r["control_cap"] = {{"u_max", plant.u_max}, {"max_norm_u", max_u}, {"violations", cap_violations}};

  if (spec.has_bmsb) {
    std::vector<std::vector<Vector>> z_seqs;
    for (const Trajectory& traj : result.trajectories) z_seqs.push_back(covariate_sequence(traj));
    Rng rng = Rng::derive(seed, 0x7a657461ull);  // "zeta"
    const double p_hat =
        bmsb_proxy(z_seqs, spec.experiment.bmsb->k, spec.experiment.bmsb->gamma_sb, cs.bmsb_zeta_samples, rng);
    r["bmsb_proxy"] = {{"p_hat", p_hat},
                       {"configured_p", spec.experiment.bmsb->p},
                       {"k", spec.experiment.bmsb->k},
                       {"zeta_samples", cs.bmsb_zeta_samples},
                       {"note", "unconditional proxy, not the conditional small-ball constant"}};
    const BoundContext ctx = build_bound_context(plant, *spec.experiment.bmsb, cs.mgf_samples, seed);
    const MarginReport margin = check_margin(ctx);
    r["assumption_margin"] = {{"lhs", margin.lhs}, {"rhs", margin.rhs}, {"satisfied", margin.satisfied}};
  }

  r["violations"] = cap_violations;
  const std::string text = r.dump(2) + "\n";
  if (!out_dir.empty()) write_text_file(out_dir + "/diagnose_report.json", text);
  std::cout << text;
  return cap_violations > 0 ? 1 : 0;
}

}  // namespace

std::string run_spec_to_json(const RunSpec& spec) { return spec_to_json_impl(spec).dump(2) + "\n"; }

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Adaptive stabilization of input-constrained stochastic linear systems: "
               "simulation, closed-form stability bounds, and Monte Carlo certification"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_set = false, inject_fault = false;
  long trials_override = -1, horizon_override = -1;
  std::string mode_override;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "JSON configuration file");
    if (needs_config) opt->required();
    sub->add_option("--threads", threads, "worker threads (0 = library default, 1 = serial)");
    sub->add_option("--seed", seed, "master seed override")->each([&](const std::string&) { seed_set = true; });
  };

  CLI::App* sim = app.add_subcommand("simulate", "run closed-loop trials and write CSV series");
  add_common(sim, true);
  sim->add_option("--out", out_path, "output directory")->required();
  sim->add_option("--trials", trials_override, "trial count override");
  sim->add_option("--horizon", horizon_override, "horizon override (raw steps)");
  sim->add_option("--mode", mode_override, "adaptive | frozen_truth | uncontrolled");

  CLI::App* fig1 = app.add_subcommand("figure1", "benchmark plants vs uncontrolled baseline");
  add_common(fig1, false);
  fig1->add_option("--out", out_path, "output directory")->required();

  CLI::App* fig2 = app.add_subcommand("figure2", "benchmark plant 1 across initial states");
  add_common(fig2, false);
  fig2->add_option("--out", out_path, "output directory")->required();

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "closed-form constants and envelopes as JSON");
  add_common(bounds_cmd, true);
  bounds_cmd->add_option("--out", out_path, "report file (default: stdout)");

  CLI::App* check = app.add_subcommand("check", "Monte Carlo certification suites");
  add_common(check, true);
  check->add_option("--out", out_path, "report directory");
  check->add_flag("--inject-fault", inject_fault, "self-test: force-tighten the drift bounds");

  CLI::App* diag = app.add_subcommand("diagnose", "data diagnostics: small-ball proxy, margins, control cap");
  add_common(diag, true);
  diag->add_option("--out", out_path, "report directory");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help();
      return 0;
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    RunSpec spec;
    const bool has_config = !config_path.empty();
    if (has_config) {
      spec = load_run_spec(config_path);
      if (seed_set) spec.experiment.master_seed = seed;
      if (trials_override > 0) spec.experiment.trials = static_cast<int>(trials_override);
      if (horizon_override > 0) spec.experiment.horizon = horizon_override;
      if (!mode_override.empty()) spec.experiment.mode = mode_from_string(mode_override);
    }
    const std::uint64_t effective_seed = has_config ? spec.experiment.master_seed : (seed_set ? seed : 1);

    if (sim->parsed()) return cmd_simulate(spec, out_path, threads);
    if (fig1->parsed()) return cmd_figure1(effective_seed, out_path, threads);
    if (fig2->parsed()) return cmd_figure2(effective_seed, out_path, threads);
    if (bounds_cmd->parsed()) return cmd_bounds(spec, out_path);
    if (check->parsed()) return cmd_check(spec, out_path, threads, inject_fault);
    if (diag->parsed()) return cmd_diagnose(spec, out_path, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace salc
