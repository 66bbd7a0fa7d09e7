#pragma once

#include <string>
#include <vector>

#include "salc/bounds.hpp"
#include "salc/experiments.hpp"

namespace salc {

// Diagnostic knobs carried by the config file; every field has a desk-scale
// default.
struct CheckSettings {
  double delta = 0.2;
  int coverage_trials = 50;
  long coverage_horizon = 0;  // 0: burn-in time plus a margin
  int drift_z_samples = 50;
  int drift_inner_samples = 10000;
  std::vector<long> tau_multipliers = {1, 2, 4};
  long mgf_samples = 1000000;
  int bmsb_zeta_samples = 64;
  int bmsb_trials = 10;
  // bounds-report envelope grid
  std::vector<double> report_deltas = {0.1, 0.2, 0.5};
  std::vector<long> report_tau_multipliers = {0, 1, 2, 4, 8};
};

struct RunSpec {
  ExperimentConfig experiment;
  CheckSettings check;
  bool has_bmsb = false;
};

RunSpec load_run_spec(const std::string& path);
std::string run_spec_to_json(const RunSpec& spec);

// Entry point shared by the binary and the tests. args excludes argv[0].
// Exit codes: 0 success, 1 invariant violation, 2 usage/config/IO error.
int run_cli(const std::vector<std::string>& args);

}  // namespace salc
