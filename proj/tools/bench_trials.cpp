// Times the trial batch on the serial reference path against the OpenMP
// kernel and checks the outputs agree bit for bit.

#include <chrono>
#include <cstdio>

#include "salc/experiments.hpp"
#include "salc/parallel.hpp"

using namespace salc;

namespace {
double run_once(const ExperimentConfig& cfg, int threads, PercentileSeries& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = run_experiment(cfg, threads).series;
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}
}  // namespace

int main(int argc, char** argv) {
  int trials = 200;
  long horizon = 2000;
  if (argc > 1) trials = std::atoi(argv[1]);
  if (argc > 2) horizon = std::atol(argv[2]);

  ExperimentConfig cfg;
  cfg.plant = benchmark_plant(1);
  cfg.trials = trials;
  cfg.horizon = horizon;
  cfg.master_seed = 7;
  cfg.name = "bench";

  PercentileSeries serial, parallel;
  const double t_serial = run_once(cfg, 1, serial);
  const double t_parallel = run_once(cfg, 0, parallel);

  bool identical = serial.median == parallel.median && serial.p90 == parallel.p90;
  std::printf("trials=%d horizon=%ld threads=%d\n", trials, horizon, par::max_threads());
  std::printf("serial    %.3f s\n", t_serial);
  std::printf("parallel  %.3f s  (speedup %.2fx)\n", t_parallel, t_serial / t_parallel);
  std::printf("outputs identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
