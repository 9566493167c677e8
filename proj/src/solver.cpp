// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include "ednse/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "ednse/error.hpp"
#include "ednse/spectral.hpp"
#include "pseudo.hpp"

namespace ednse {

void SolverConfig::validate() const {
  grid.validate();
  damping.validate();
  if (!(viscosity > 0.0)) throw InvalidArgument("solver: viscosity must be positive");
  if (!(t_end > 0.0)) throw InvalidArgument("solver: t_end must be positive");
  if (output_every < 1) throw InvalidArgument("solver: output_every must be at least 1");
  if (dt_policy == DtPolicy::fixed && !(dt > 0.0)) throw InvalidArgument("solver: dt must be positive");
  if (!(cfl_safety > 0.0)) throw InvalidArgument("solver: cfl_safety must be positive");
  if (!(dt_max > 0.0)) throw InvalidArgument("solver: dt_max must be positive");
  if (cutoff_R) {
    if (!(*cutoff_R >= 0.0) || *cutoff_R > grid.max_wavenumber()) {
      throw InvalidArgument("solver: cutoff_R must lie in [0, max lattice |k|]");
    }
  }
}

namespace {

bool uses_damping(const SolverConfig& cfg) { return cfg.damping.kind != DampingKind::none; }

// Collocation values used for the damping term: the dealiased field when the
// Friedrichs ball sits inside the dealias ball (the usual case, where the two
// coincide), the raw field otherwise.
const PhysicalVectorField& damping_input(const SpectralVectorField& u, const SolverConfig& cfg,
                                         const PhysicalVectorField& dealiased, PhysicalVectorField& scratch) {
  if (cfg.cutoff() <= cfg.grid.dealias_radius()) return dealiased;
  scratch = detail::inverse_unchecked(u);
  return scratch;
}

void require_finite(const SpectralVectorField& u, long step) {
  for (int j = 0; j < 3; ++j)
    for (const auto& c : u.component(j))
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw BlowUpError("solver: non-finite coefficients after step " + std::to_string(step));
      }
}

// e^{-nu |k|^2 dt} for every lattice index.
std::vector<double> heat_factors(const GridSpec& grid, double dt, double viscosity) {
  const auto k = detail::axis_wavenumbers(grid);
  std::vector<double> e(grid.size());
  const int n = grid.n;
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        const double k2 = k[i0] * k[i0] + k[i1] * k[i1] + k[i2] * k[i2];
        e[grid.flat(i0, i1, i2)] = std::exp(-viscosity * k2 * dt);
      }
  return e;
}

void apply_factors(SpectralVectorField& u, const std::vector<double>& e) {
  for (int j = 0; j < 3; ++j) {
    auto c = u.component(j);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= e[i];
  }
}

double margin_of(double w, double bound) {
  if (bound > 0.0) return w / bound;
  return w == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

void push_gronwall_sample(GronwallReport& report, double t, double w, double w0) {
  const double b1 = w0 * std::exp(report.lambda0 * t);
  const double b2 = w0 * std::exp(2.0 * report.lambda0 * t);
  report.times.push_back(t);
  report.w_norm_sq.push_back(w);
  report.bound.push_back(b1);
  report.bound_doubled.push_back(b2);
  report.margin = std::max(report.margin, margin_of(w, b1));
  report.margin_doubled = std::max(report.margin_doubled, margin_of(w, b2));
}

double threshold_for(const SolverConfig& cfg) {
  if (cfg.damping.kind != DampingKind::exponential) {
    throw InvalidArgument("Gronwall comparison requires exponential damping");
  }
  return lambda0(cfg.damping.a, cfg.damping.b).lambda0;
}

bool finished(const SimState& s, const SolverConfig& cfg) {
  const double scale = cfg.dt_policy == DtPolicy::fixed ? cfg.dt : cfg.dt_max;
  return cfg.t_end - s.t <= 1e-9 * scale;
}

SimState initial_state(const SolverConfig& cfg, const SpectralVectorField& u0) {
  if (!(u0.grid() == cfg.grid)) throw InvalidArgument("initial field grid does not match solver grid");
  SimState s;
  s.u = u0;
  detail::project_truncate(s.u, cfg.cutoff());
  return s;
}

}  // namespace

SpectralVectorField heat_semigroup(const SpectralVectorField& u, double dt, double viscosity) {
  SpectralVectorField out = u;
  apply_factors(out, heat_factors(u.grid(), dt, viscosity));
  return out;
}

SpectralVectorField rhs(const SpectralVectorField& u, const SolverConfig& cfg) {
  SpectralVectorField out(cfg.grid);
  if (cfg.advection || uses_damping(cfg)) {
    const PhysicalVectorField phys = detail::dealiased_physical(u);
    if (cfg.advection) out = detail::advection_divergence(phys);
    if (uses_damping(cfg)) {
      PhysicalVectorField scratch;
      out += forward_transform(damping_force(damping_input(u, cfg, phys, scratch), cfg.damping));
    }
  }
  detail::project_truncate(out, cfg.cutoff());
  out *= -1.0;
  return out;
}

SimState step(const SimState& state, double dt, const SolverConfig& cfg) {
  if (!(dt > 0.0)) throw InvalidArgument("step: dt must be positive");
  // Most runs repeat one step size, so keep the last factor table.
  struct FactorCache {
    GridSpec grid;
    double dt = 0.0;
    double viscosity = 0.0;
    std::vector<double> e;
  };
  thread_local FactorCache cache;
  if (cache.e.empty() || !(cache.grid == cfg.grid) || cache.dt != dt || cache.viscosity != cfg.viscosity) {
    cache.e = heat_factors(cfg.grid, dt, cfg.viscosity);
    cache.grid = cfg.grid;
    cache.dt = dt;
    cache.viscosity = cfg.viscosity;
  }
  const std::vector<double>& e = cache.e;

  const SpectralVectorField r0 = rhs(state.u, cfg);
  SpectralVectorField stage = state.u;
  stage.axpy(dt, r0);
  apply_factors(stage, e);
  const SpectralVectorField r1 = rhs(stage, cfg);

  SimState next;
  next.t = state.t + dt;
  next.step = state.step + 1;
  next.u = state.u;
  next.u.axpy(0.5 * dt, r0);
  apply_factors(next.u, e);
  next.u.axpy(0.5 * dt, r1);
  detail::project_truncate(next.u, cfg.cutoff());
  require_finite(next.u, next.step);
  return next;
}

double cfl_dt(const SimState& state, const SolverConfig& cfg) {
  const double m = detail::inverse_unchecked(state.u).max_speed();
  if (!std::isfinite(m)) throw BlowUpError("cfl_dt: non-finite velocity");
  if (m == 0.0) return cfg.dt_max;
  constexpr double eps = 1e-300;
  const double advective = cfg.grid.spacing() / m;
  double damping = std::numeric_limits<double>::infinity();
  const DampingParams& p = cfg.damping;
  if (p.kind == DampingKind::exponential) {
    const double z = p.b * m * m;
    if (z > kMaxDampingExponent) throw BlowUpError("cfl_dt: damping exponent overflow");
    damping = 1.0 / (p.a * std::exp(z) * z * 2.0 + eps);
  } else if (p.kind == DampingKind::polynomial) {
    damping = 1.0 / (p.a * p.beta * std::pow(m, p.beta - 1.0) + eps);
  }
  return std::min(cfg.cfl_safety * std::min(advective, damping), cfg.dt_max);
}

double next_dt(const SimState& state, const SolverConfig& cfg) {
  const double raw = cfg.dt_policy == DtPolicy::fixed ? cfg.dt : cfl_dt(state, cfg);
  const double remaining = cfg.t_end - state.t;
  if (state.t + raw >= cfg.t_end - 1e-9 * raw) return remaining;
  return raw;
}

RunResult run(const SolverConfig& cfg, const SpectralVectorField& u0, const RunOptions& options) {
  cfg.validate();
  RunResult result;
  SimState s = initial_state(cfg, u0);
  if (options.record_trajectory) {
    result.trajectory = Trajectory(cfg.grid, cfg.cutoff());
    result.trajectory.record(s);
  }
  result.ledger.push_back(initial_ledger_row(s, cfg));
  result.max_step_growth = -std::numeric_limits<double>::infinity();
  double l2_prev = l2_norm_sq(s.u);
  while (!finished(s, cfg)) {
    const double dt = next_dt(s, cfg);
    SimState next = step(s, dt, cfg);
    const double l2 = l2_norm_sq(next.u);
    result.max_step_growth = std::max(result.max_step_growth, l2 - l2_prev);
    l2_prev = l2;
    if (options.on_step) options.on_step(s, next, dt);
    s = std::move(next);
    if (s.step % cfg.output_every == 0 || finished(s, cfg)) {
      result.ledger.push_back(update_ledger(result.ledger.back(), s, cfg));
      if (options.record_trajectory) result.trajectory.record(s);
    }
  }
  if (s.step == 0) result.max_step_growth = 0.0;
  result.steps = s.step;
  result.final_state = std::move(s);
  return result;
}

GronwallReport twin_run(const SolverConfig& cfg, const SpectralVectorField& u0,
                        const SpectralVectorField& perturbation) {
  cfg.validate();
  GronwallReport report;
  report.lambda0 = threshold_for(cfg);
  SimState u = initial_state(cfg, u0);
  SimState v = initial_state(cfg, u0 + perturbation);
  const double w0 = l2_norm_sq(v.u - u.u);
  push_gronwall_sample(report, 0.0, w0, w0);
  while (!finished(u, cfg)) {
    const double dt = next_dt(u, cfg);
    u = step(u, dt, cfg);
    v = step(v, dt, cfg);
    if (u.step % cfg.output_every == 0 || finished(u, cfg)) {
      push_gronwall_sample(report, u.t, l2_norm_sq(v.u - u.u), w0);
    }
  }
  return report;
}

GronwallReport shifted_twin_run(const SolverConfig& cfg, const SpectralVectorField& u0, int shift_steps) {
  cfg.validate();
  if (cfg.dt_policy != DtPolicy::fixed) {
    throw InvalidArgument("shifted_twin_run: the shift must be a whole number of fixed steps");
  }
  if (shift_steps < 0) throw InvalidArgument("shifted_twin_run: shift_steps must be non-negative");
  GronwallReport report;
  report.lambda0 = threshold_for(cfg);
  const long total = std::lround(cfg.t_end / cfg.dt);
  if (total < shift_steps) throw InvalidArgument("shifted_twin_run: shift exceeds the run length");

  // window.front() is u_{m}, window.back() is u_{m + shift}.
  std::deque<SpectralVectorField> window;
  SimState s = initial_state(cfg, u0);
  window.push_back(s.u);
  for (int i = 0; i < shift_steps; ++i) {
    s = step(s, cfg.dt, cfg);
    window.push_back(s.u);
  }
  const double w0 = l2_norm_sq(window.back() - window.front());
  push_gronwall_sample(report, 0.0, w0, w0);
  for (long m = 1; m + shift_steps <= total; ++m) {
    s = step(s, cfg.dt, cfg);
    window.push_back(s.u);
    window.pop_front();
    if (m % cfg.output_every == 0 || m + shift_steps == total) {
      push_gronwall_sample(report, static_cast<double>(m) * cfg.dt, l2_norm_sq(window.back() - window.front()), w0);
    }
  }
  return report;
}

}  // namespace ednse
