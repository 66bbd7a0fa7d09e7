#include <cmath>

#include <doctest.h>

#include "salc/controller.hpp"
#include "salc/estimator.hpp"
#include "salc/experiments.hpp"

using namespace salc;

namespace {
double max_abs(const Matrix& m) {
  double v = 0.0;
  for (double e : m.entries()) v = std::max(v, std::abs(e));
  return v;
}
}  // namespace

TEST_SUITE("controller") {
  TEST_CASE("saturation basics") {
    CHECK(sat({3.0, 4.0}, 5.0) == Vector{3.0, 4.0});
    const Vector clipped = sat({6.0, 8.0}, 5.0);
    CHECK(clipped[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(clipped[1] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(sat({0.0, 0.0}, 1.0) == Vector{0.0, 0.0});
    CHECK_THROWS_AS(sat({1.0}, 0.0), std::invalid_argument);
  }

  TEST_CASE("saturation is nonexpansive; saturated pairs obey the direction bound") {
    Rng rng(3);
    int both_saturated = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      const double r = 0.2 + 2.0 * rng.next_double();
      Vector x1{rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian()};
      Vector x2{rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian()};
      x1 = (0.1 + 3.0 * rng.next_double()) * x1;
      x2 = (0.1 + 3.0 * rng.next_double()) * x2;
      const double gap = norm(sat(x2, r) - sat(x1, r));
      CHECK(gap <= norm(x2 - x1) + 1e-12);
      if (norm(x1) > r && norm(x2) > r) {
        ++both_saturated;
        const Vector d1 = (1.0 / norm(x1)) * x1;
        const Vector d2 = (1.0 / norm(x2)) * x2;
        CHECK(gap <= r * norm(d2 - d1) + 1e-12);
      }
    }
    CHECK(both_saturated > 1000);
  }

  TEST_CASE("deadbeat gain") {
    // vanishing A^kappa gives the zero gain
    CHECK(max_abs(deadbeat_gain(Matrix(2, 2), Matrix::identity(2), 1)) == 0.0);
    CHECK(max_abs(deadbeat_gain(Matrix::identity(2), Matrix::identity(2), 1) - Matrix::identity(2)) < 1e-12);

    const PlantConfig cfg = benchmark_plant(1);
    const Matrix gain = deadbeat_gain(cfg.A, cfg.B, 2);
    const Matrix expected = Matrix::from_rows({{-1.0, -1.0}, {0.0, std::sqrt(2.0)}});
    CHECK(max_abs(gain - expected) < 1e-10);

    // oracle: the gain cancels A^kappa through the reachability matrix
    const Matrix a2 = matrix_power(cfg.A, 2);
    const Matrix r = reachability_matrix(cfg.A, cfg.B, 2);
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const Vector z{rng.next_gaussian(), rng.next_gaussian()};
      CHECK(norm(a2 * z - r * (gain * z)) <= 1e-9);
    }
  }

  TEST_CASE("block control stacking") {
    const PlantConfig cfg = benchmark_plant(1);
    ControllerState state{pack_theta(cfg.A, cfg.B), cfg.sat_level(), cfg.kappa};

    const Vector x0{0.0, 0.0};
    const BlockControl quiet = block_control(state, x0, {{0.0}, {0.0}});
    for (const Vector& u : quiet.controls) CHECK(norm(u) == 0.0);

    // x = 0 leaves only the excitations; the stack lists newest first, so
    // forward-time extraction reverses it
    const Vector a{0.25}, b{-0.3};
    const BlockControl pure = block_control(state, x0, {a, b});
    CHECK(pure.controls[0] == b);
    CHECK(pure.controls[1] == a);

    // far-away states saturate the CE part exactly
    const BlockControl far = block_control(state, {1e6, -2e6}, {{0.0}, {0.0}});
    CHECK(norm(far.ce_part) == doctest::Approx(cfg.sat_level()).epsilon(1e-12));

    CHECK_THROWS_AS(block_control(state, x0, {{0.1}}), std::invalid_argument);
  }

  TEST_CASE("closed loop: exact deadbeat with the true parameters and no noise") {
    PlantConfig cfg = benchmark_plant(1);
    cfg.disturbance = NoiseSpec::zero_noise(2);
    cfg.excitation = NoiseSpec::zero_noise(1);
    cfg.c_level = 0.0;
    // start inside the deadbeat region
    const Matrix gain = deadbeat_gain(cfg.A, cfg.B, cfg.kappa);
    Vector x0{0.05, -0.08};
    REQUIRE(norm(gain * x0) <= cfg.sat_level());
    cfg.x0 = x0;
    SimOptions opts{RunMode::frozen, pack_theta(cfg.A, cfg.B)};
    const Trajectory traj = run_closed_loop(cfg, 3, 1, opts);
    CHECK(norm(traj.states[cfg.kappa]) <= 1e-12);       // xbar_1 = 0
    CHECK(norm(traj.states[2 * cfg.kappa]) <= 1e-12);   // and it stays there
  }

  TEST_CASE("closed loop: control cap holds at every step") {
    const PlantConfig cfg = benchmark_plant(1);
    SimOptions opts{RunMode::adaptive, draw_theta0(2, 1, 8)};
    const Trajectory traj = run_closed_loop(cfg, 500, 2024, opts);
    for (const Vector& u : traj.controls) CHECK(norm(u) <= cfg.u_max + 1e-12);
    for (const Vector& v : traj.excitations) CHECK(norm(v) <= cfg.c_level);
  }

  TEST_CASE("closed loop: identical seeds reproduce bitwise") {
    const PlantConfig cfg = benchmark_plant(2);
    SimOptions opts{RunMode::adaptive, draw_theta0(2, 1, 9)};
    const Trajectory a = run_closed_loop(cfg, 100, 4242, opts);
    const Trajectory b = run_closed_loop(cfg, 100, 4242, opts);
    REQUIRE(a.states.size() == b.states.size());
    for (size_t t = 0; t < a.states.size(); ++t) CHECK(a.states[t] == b.states[t]);
    for (size_t t = 0; t < a.controls.size(); ++t) CHECK(a.controls[t] == b.controls[t]);
  }

  TEST_CASE("closed loop with frozen truth matches the sub-sampled recursion") {
    const PlantConfig cfg = benchmark_plant(1);
    const SubsampledContext ctx = build_subsampled_context(cfg);
    const Matrix gain = deadbeat_gain(cfg.A, cfg.B, cfg.kappa);
    SimOptions opts{RunMode::frozen, pack_theta(cfg.A, cfg.B)};
    const Trajectory traj = run_closed_loop(cfg, 50, 31337, opts);

    for (int tau = 0; tau < 50; ++tau) {
      const Vector xbar = traj.states[2 * tau];
      // newest first: raw steps 2 tau + 1 then 2 tau
      const std::vector<Vector> v_block{traj.excitations[2 * tau + 1], traj.excitations[2 * tau]};
      const std::vector<Vector> w_block{traj.disturbances[2 * tau + 1], traj.disturbances[2 * tau]};
      const Vector predicted = ctx.a_pow_kappa * xbar + ctx.r_star * sat(-1.0 * (gain * xbar), cfg.sat_level()) +
                               aggregate_excitation(ctx, v_block) + aggregate_disturbance(ctx, w_block);
      CHECK(norm(predicted - traj.states[2 * tau + 2]) <= 1e-9);
    }
  }

  TEST_CASE("adaptive closed loop matches the sub-sampled recursion under its recorded estimates") {
    const PlantConfig cfg = benchmark_plant(1);
    const SubsampledContext ctx = build_subsampled_context(cfg);
    SimOptions opts{RunMode::adaptive, draw_theta0(2, 1, 77)};
    const Trajectory traj = run_closed_loop(cfg, 60, 606, opts);
    for (int tau = 0; tau < 60; ++tau) {
      const ControllerState st{traj.estimates[tau], cfg.sat_level(), cfg.kappa};
      const Matrix gain = deadbeat_gain(st.a_hat(), st.b_hat(), cfg.kappa);
      const Vector xbar = traj.states[2 * tau];
      const std::vector<Vector> v_block{traj.excitations[2 * tau + 1], traj.excitations[2 * tau]};
      const std::vector<Vector> w_block{traj.disturbances[2 * tau + 1], traj.disturbances[2 * tau]};
      const Vector predicted = ctx.a_pow_kappa * xbar + ctx.r_star * sat(-1.0 * (gain * xbar), cfg.sat_level()) +
                               aggregate_excitation(ctx, v_block) + aggregate_disturbance(ctx, w_block);
      CHECK(norm(predicted - traj.states[2 * tau + 2]) <= 1e-9);
    }
  }

  TEST_CASE("rank-deficient estimates still yield a finite, capped control") {
    PlantConfig cfg = benchmark_plant(1);
    // estimate whose reachability matrix has rank one
    const Matrix a_hat = Matrix::identity(2);
    const Matrix b_hat = Matrix::from_rows({{1.0}, {0.0}});
    ControllerState state{pack_theta(a_hat, b_hat), cfg.sat_level(), cfg.kappa};
    const BlockControl out = block_control(state, {100.0, -50.0}, {{0.0}, {0.0}});
    for (const Vector& u : out.controls) CHECK(norm(u) <= cfg.sat_level() + 1e-12);
    for (double e : out.ce_part) CHECK(std::isfinite(e));
  }
}
