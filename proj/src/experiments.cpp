#include "salc/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "salc/parallel.hpp"

namespace salc {

void ExperimentConfig::validate() const {
  plant.validate();
  if (trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
  if (horizon < plant.kappa) throw std::invalid_argument("ExperimentConfig: horizon must cover at least one block");
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile: empty input");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("percentile: q must lie in (0, 1)");
  std::sort(values.begin(), values.end());
  const size_t rank = static_cast<size_t>(std::ceil(q * values.size()));
  return values[std::max<size_t>(rank, 1) - 1];
}

Matrix draw_theta0(int n, int m, std::uint64_t master_seed) {
  Rng rng = Rng::derive(master_seed, 0);
  while (true) {
    Matrix theta(n, n + m);
    for (double& e : theta.entries()) e = rng.next_gaussian();
    double b_mass = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = n; j < n + m; ++j) b_mass += std::abs(theta(i, j));
    if (b_mass > 0.0) return theta;
  }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  ExperimentResult result;
  if (!cfg.theta0.empty())
    result.theta0 = cfg.theta0;
  else if (cfg.mode == RunMode::frozen)  // frozen_truth: hold the true parameters
    result.theta0 = hcat({cfg.plant.A, cfg.plant.B});
  else
    result.theta0 = draw_theta0(cfg.plant.n(), cfg.plant.m(), cfg.master_seed);

  const int kappa = cfg.plant.kappa;
  const long horizon_tau = (cfg.horizon + kappa - 1) / kappa;
  result.trajectories.resize(cfg.trials);
  par::for_indexed(cfg.trials, threads, [&](long trial) {
    SimOptions opts{cfg.mode, result.theta0};
    Trajectory traj =
        run_closed_loop(cfg.plant, static_cast<int>(horizon_tau), Rng::derive(cfg.master_seed, 1 + trial).next_u64(), opts);
    // Trim block-rounded tails so every trial is exactly `horizon` steps.
    traj.states.resize(cfg.horizon + 1);
    traj.controls.resize(cfg.horizon);
    traj.excitations.resize(cfg.horizon);
    traj.disturbances.resize(cfg.horizon);
    result.trajectories[trial] = std::move(traj);
  });

  PercentileSeries& s = result.series;
  s.times.resize(cfg.horizon + 1);
  s.median.resize(cfg.horizon + 1);
  s.p90.resize(cfg.horizon + 1);
  std::vector<double> at_t(cfg.trials);
  for (long t = 0; t <= cfg.horizon; ++t) {
    for (int i = 0; i < cfg.trials; ++i) at_t[i] = norm(result.trajectories[i].states[t]);
    s.times[t] = t;
    s.median[t] = percentile(at_t, 0.5);
    s.p90[t] = percentile(at_t, 0.9);
  }
  return result;
}

PlantConfig benchmark_plant(int index) {
  const double c = std::cos(3.14159265358979323846 / 4.0);
  PlantConfig cfg;
  switch (index) {
    case 1:
      cfg.A = Matrix::from_rows({{c, c}, {-c, c}});
      cfg.B = Matrix::from_rows({{0.0}, {1.0}});
      break;
    case 2:
      cfg.A = Matrix::from_rows({{0.0, -1.0}, {1.0, 0.0}});
      cfg.B = Matrix::from_rows({{0.3}, {-0.5}});
      break;
    case 3:
      cfg.A = Matrix::from_rows({{0.8 * c, 0.8 * c}, {-0.8 * c, 0.8 * c}});
      cfg.B = Matrix::from_rows({{0.5}, {0.0}});
      break;
    default:
      throw std::invalid_argument("benchmark_plant: index must be 1, 2 or 3");
  }
  cfg.kappa = 2;
  cfg.u_max = 1.0;
  cfg.c_level = 0.4;
  cfg.x0 = {0.0, 0.0};
  cfg.disturbance = NoiseSpec::gaussian(Matrix::identity(2));
  cfg.excitation = NoiseSpec::uniform_ball(1, 0.4);
  return cfg;
}

double max_control_norm(const std::vector<Trajectory>& trajectories) {
  double worst = 0.0;
  for (const Trajectory& traj : trajectories)
    for (const Vector& u : traj.controls) worst = std::max(worst, norm(u));
  return worst;
}

Figure1Data figure1_suite(std::uint64_t seed, int threads) {
  Figure1Data data;
  data.labels = {"sys1", "sys2", "sys3", "sys1_uncontrolled"};
  for (int i = 1; i <= 3; ++i) {
    ExperimentConfig cfg;
    cfg.plant = benchmark_plant(i);
    cfg.trials = 100;
    cfg.horizon = 1000;
    cfg.master_seed = seed + static_cast<std::uint64_t>(i - 1);
    cfg.mode = RunMode::adaptive;
    cfg.name = data.labels[i - 1];
    const ExperimentResult r = run_experiment(cfg, threads);
    data.series.push_back(r.series);
    data.max_control.push_back(max_control_norm(r.trajectories));
  }
  ExperimentConfig uncontrolled;
  uncontrolled.plant = benchmark_plant(1);
  uncontrolled.trials = 100;
  uncontrolled.horizon = 1000;
  uncontrolled.master_seed = seed + 3;
  uncontrolled.mode = RunMode::uncontrolled;
  uncontrolled.name = data.labels[3];
  const ExperimentResult r = run_experiment(uncontrolled, threads);
  data.series.push_back(r.series);
  data.max_control.push_back(max_control_norm(r.trajectories));
  return data;
}

Figure2Data figure2_suite(std::uint64_t seed, int threads) {
  Figure2Data data;
  data.x0_set = {{0.0, 0.0}, {5.0, 5.0}, {20.0, 0.0}, {0.0, -50.0}};
  for (size_t i = 0; i < data.x0_set.size(); ++i) {
    ExperimentConfig cfg;
    cfg.plant = benchmark_plant(1);
    cfg.plant.disturbance = NoiseSpec::gaussian(0.1 * Matrix::identity(2));
    cfg.plant.x0 = data.x0_set[i];
    cfg.trials = 100;
    cfg.horizon = 1000;
    cfg.master_seed = seed + static_cast<std::uint64_t>(i);
    cfg.mode = RunMode::adaptive;
    cfg.name = "sys1_x0_" + std::to_string(i);
    const ExperimentResult r = run_experiment(cfg, threads);
    data.series.push_back(r.series);
    data.max_control.push_back(max_control_norm(r.trajectories));
  }
  return data;
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_trial_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_trial_csv: cannot open " + path);
  const int n = static_cast<int>(traj.states[0].size());
  const int m = traj.steps() > 0 ? static_cast<int>(traj.controls[0].size()) : 0;
  out << "t";
  for (int i = 1; i <= n; ++i) out << ",x_" << i;
  for (int i = 1; i <= m; ++i) out << ",u_" << i;
  for (int i = 1; i <= m; ++i) out << ",v_" << i;
  out << ",norm_x\n";
  for (size_t t = 0; t < traj.states.size(); ++t) {
    out << t;
    for (double e : traj.states[t]) out << ',' << format_double(e);
    if (t < traj.controls.size()) {
      for (double e : traj.controls[t]) out << ',' << format_double(e);
      for (double e : traj.excitations[t]) out << ',' << format_double(e);
    } else {
      for (int i = 0; i < 2 * m; ++i) out << ',';
    }
    out << ',' << format_double(norm(traj.states[t])) << '\n';
  }
}

void write_series_csv(const std::string& path, const PercentileSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_series_csv: cannot open " + path);
  out << "t,median,p90\n";
  for (size_t i = 0; i < series.times.size(); ++i)
    out << series.times[i] << ',' << format_double(series.median[i]) << ',' << format_double(series.p90[i]) << '\n';
}

}  // namespace salc
