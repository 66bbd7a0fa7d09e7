#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "salc/bounds.hpp"
#include "salc/controller.hpp"
#include "salc/system.hpp"

namespace salc {

struct ExperimentConfig {
  PlantConfig plant;
  int trials = 1;
  long horizon = 1000;  // raw steps
  std::uint64_t master_seed = 1;
  RunMode mode = RunMode::adaptive;
  std::optional<BmsbParams> bmsb;
  // Initial estimate, fixed across trials. Empty means: draw once from the
  // master seed (stream 0).
  Matrix theta0;
  std::string name = "experiment";

  void validate() const;
};

// Per-step median and 90th percentile of |x_t| across trials.
struct PercentileSeries {
  std::vector<long> times;
  std::vector<double> median;
  std::vector<double> p90;
};

// Nearest-rank percentile: sorted value at index ceil(q * N), 1-based.
double percentile(std::vector<double> values, double q);

struct ExperimentResult {
  PercentileSeries series;
  std::vector<Trajectory> trajectories;
  Matrix theta0;  // the estimate actually used
};

// Runs `trials` independent closed-loop trajectories with per-trial seeds
// derived from (master_seed, 1 + trial). Aggregation is index-ordered and
// serial, so the output is identical for any thread count.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads = 0);

// Initial estimate drawn from stream 0 of the master seed: standard normal
// entries, redrawn in the zero-measure case of an all-zero input block.
Matrix draw_theta0(int n, int m, std::uint64_t master_seed);

// The three benchmark plants: rotation by pi/4 with b = (0, 1); rotation by
// -pi/2 with b = (0.3, -0.5); 0.8-damped rotation by pi/4 with b = (0.5, 0).
// All use u_max = 1, c_level = 0.4, kappa = 2, unit-covariance Gaussian
// disturbance, scalar uniform excitation on [-0.4, 0.4], x0 = 0.
PlantConfig benchmark_plant(int index);

struct Figure1Data {
  std::vector<std::string> labels;  // sys1, sys2, sys3, sys1_uncontrolled
  std::vector<PercentileSeries> series;
  std::vector<double> max_control;  // largest |u_t| seen per batch
};
// 100 trials, horizon 1000: the three controlled plants plus plant 1 left
// uncontrolled.
Figure1Data figure1_suite(std::uint64_t seed, int threads = 0);

struct Figure2Data {
  std::vector<Vector> x0_set;
  std::vector<PercentileSeries> series;
  std::vector<double> max_control;
};
// Plant 1 with disturbance covariance 0.1 I across initial states
// {(0,0), (5,5), (20,0), (0,-50)}, 100 trials, horizon 1000.
Figure2Data figure2_suite(std::uint64_t seed, int threads = 0);

double max_control_norm(const std::vector<Trajectory>& trajectories);

// --- file output -----------------------------------------------------------

// One row per step: t, state, control, excitation, |x|. The final row has
// only t, state and |x| (no control was applied after it).
void write_trial_csv(const std::string& path, const Trajectory& traj);
void write_series_csv(const std::string& path, const PercentileSeries& series);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace salc
