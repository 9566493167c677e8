// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include <cmath>

#include "ednse/diagnostics.hpp"
#include "ednse/error.hpp"
#include "ednse/solver.hpp"
#include "ednse/spectral.hpp"
#include "oracles.hpp"

using namespace ednse;

namespace {

SolverConfig small_config(int n = 16) {
  SolverConfig cfg;
  cfg.grid.n = n;
  cfg.t_end = 0.1;
  return cfg;
}

// (0, A sin x1, 0): one shell with |k|^2 = 1.
SpectralVectorField sine_mode(const GridSpec& g, double A) {
  SpectralVectorField u(g);
  oracle::set_mode(u, {1, 0, 0}, {0.0, Complex(0.0, -A / 2), 0.0});
  return u;
}

}  // namespace

TEST_CASE("heat flow of a single mode is exact") {
  SolverConfig cfg = small_config(8);
  cfg.damping.kind = DampingKind::none;
  cfg.advection = false;
  cfg.dt_policy = DtPolicy::fixed;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  const SpectralVectorField u0 = sine_mode(cfg.grid, 2.0);
  const RunResult r = run(cfg, u0);
  CHECK(r.steps == 1000);
  CHECK(r.final_state.t == doctest::Approx(1.0).epsilon(1e-12));
  // 1000 products of e^{-dt}: roundoff only.
  CHECK(oracle::max_diff(r.final_state.u, std::exp(-1.0) * u0) < 1e-13);
}

TEST_CASE("right-hand side vanishes without advection and damping") {
  SolverConfig cfg = small_config(8);
  cfg.damping.kind = DampingKind::none;
  cfg.advection = false;
  CHECK(l2_norm_sq(rhs(taylor_green(cfg.grid, 1.0), cfg)) == 0.0);
}

TEST_CASE("step keeps the state divergence free and truncated") {
  SolverConfig cfg = small_config();
  cfg.cutoff_R = 3.0;
  SimState s;
  s.u = friedrichs_cutoff(random_divfree_field(cfg.grid, 2.0, 3.0, 4, 0.8), 3.0);
  const SimState next = step(s, 1e-3, cfg);
  CHECK(next.step == 1);
  CHECK(next.t == 1e-3);
  CHECK(next.u.divergence_free());
  CHECK(divergence_residual(next.u) <= 1e-13);
  CHECK(friedrichs_cutoff(next.u, 3.0) == next.u);
  CHECK_THROWS_AS(step(s, 0.0, cfg), InvalidArgument);
}

TEST_CASE("step size policy") {
  SolverConfig cfg = small_config();
  cfg.dt_max = 0.5;
  SimState s;
  s.u = SpectralVectorField(cfg.grid);
  CHECK(cfl_dt(s, cfg) == 0.5);

  // max |u| = 1 for the unit sine mode.
  s.u = sine_mode(cfg.grid, 1.0);
  const double dx = cfg.grid.spacing();
  const double stiff = 1.0 / (2.0 * std::exp(1.0));
  CHECK(cfl_dt(s, cfg) == doctest::Approx(std::min(0.5 * std::min(dx, stiff), 0.5)));
  cfg.dt_max = 1e-3;
  CHECK(cfl_dt(s, cfg) == 1e-3);

  cfg.dt_policy = DtPolicy::fixed;
  cfg.dt = 0.03;
  cfg.t_end = 0.1;
  s.t = 0.09;
  CHECK(next_dt(s, cfg) == doctest::Approx(0.01));
  s.t = 0.0;
  CHECK(next_dt(s, cfg) == 0.03);
}

TEST_CASE("damped Taylor-Green decays monotonically within the ledger tolerance") {
  SolverConfig cfg = small_config();
  cfg.t_end = 0.2;
  const RunResult r = run(cfg, taylor_green(cfg.grid, 1.0));
  CHECK(r.max_step_growth < 0.0);
  for (const auto& row : r.ledger) CHECK(row.slack >= -kEnergySlackTolerance * row.initial_l2_sq);
  CHECK(r.ledger.size() == static_cast<std::size_t>(r.steps) + 1);
  CHECK(r.final_state.t == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("integrator converges at second order") {
  SolverConfig cfg = small_config(16);
  cfg.damping = DampingParams{DampingKind::exponential, 1.0, 1.0, 3.0};
  // At amplitude 2 the damping is stiff enough that these steps sit before
  // the asymptotic range.
  const SpectralVectorField u0 = taylor_green(cfg.grid, 1.0);
  auto solve = [&](double dt) {
    SimState s;
    s.u = u0;
    const long steps = std::lround(0.5 / dt);
    for (long i = 0; i < steps; ++i) s = step(s, dt, cfg);
    return s.u;
  };
  const SpectralVectorField a = solve(0.02), b = solve(0.01), c = solve(0.005);
  const double order = std::log2(l2_norm(a - b) / l2_norm(b - c));
  CHECK(order == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("exponential overflow surfaces as a blow-up error") {
  SolverConfig cfg = small_config(8);
  SimState s;
  s.u = taylor_green(cfg.grid, 40.0);
  CHECK_THROWS_AS(step(s, 1e-4, cfg), BlowUpError);
}

TEST_CASE("twin runs") {
  SolverConfig cfg = small_config();
  cfg.t_end = 0.2;
  cfg.dt_max = 0.01;
  const SpectralVectorField u0 = taylor_green(cfg.grid, 1.0);

  SUBCASE("identical twins stay together") {
    const GronwallReport g = twin_run(cfg, u0, SpectralVectorField(cfg.grid));
    CHECK(g.margin == 0.0);
    CHECK(g.lambda0 == 0.0);
  }
  SUBCASE("perturbed twins respect the bound") {
    const GronwallReport g = twin_run(cfg, u0, random_divfree_field(cfg.grid, 2.0, 3.0, 1, 1e-6));
    CHECK(g.margin <= 1.0 + 1e-3);
    CHECK(g.times.size() == g.bound.size());
    CHECK(g.w_norm_sq.front() == doctest::Approx(1e-12).epsilon(1e-9));
  }
  SUBCASE("weak damping gives a positive threshold") {
    cfg.damping.a = 0.1;
    const GronwallReport g = twin_run(cfg, u0, random_divfree_field(cfg.grid, 2.0, 3.0, 1, 1e-6));
    CHECK(g.lambda0 > 0.0);
    CHECK(g.bound_doubled.back() >= g.bound.back());
  }
  SUBCASE("requires exponential damping") {
    cfg.damping.kind = DampingKind::polynomial;
    CHECK_THROWS_AS(twin_run(cfg, u0, u0), InvalidArgument);
  }
  SUBCASE("shifted twins need a fixed step") {
    CHECK_THROWS_AS(shifted_twin_run(cfg, u0, 2), InvalidArgument);
    cfg.dt_policy = DtPolicy::fixed;
    cfg.dt = 0.01;
    const GronwallReport g = shifted_twin_run(cfg, u0, 2);
    CHECK(g.times.back() == doctest::Approx(0.18));
    CHECK(g.margin <= 1.0 + 1e-3);
  }
}

TEST_CASE("run validates its inputs") {
  SolverConfig cfg = small_config();
  cfg.viscosity = 0.0;
  CHECK_THROWS_AS(run(cfg, taylor_green(cfg.grid, 1.0)), InvalidArgument);
  cfg = small_config();
  GridSpec other = cfg.grid;
  other.n = 8;
  CHECK_THROWS_AS(run(cfg, taylor_green(other, 1.0)), InvalidArgument);
}
