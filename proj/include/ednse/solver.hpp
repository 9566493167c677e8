// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDNSE_SOLVER_HPP
#define EDNSE_SOLVER_HPP

#include <functional>
#include <vector>

#include "ednse/diagnostics.hpp"
#include "ednse/solver_config.hpp"

namespace ednse {

/// Non-stiff part of the truncated system: -J_R P div(u (x) u) - J_R P h(|u|) u.
SpectralVectorField rhs(const SpectralVectorField& u, const SolverConfig& cfg);

/// e^{-nu |k|^2 dt} applied modewise.
SpectralVectorField heat_semigroup(const SpectralVectorField& u, double dt, double viscosity);

/// One integrating-factor Heun step:
///   u~  = E (u + dt N(u))
///   u+  = E u + dt/2 (E N(u) + N(u~))
/// with E = e^{-nu |k|^2 dt}, followed by re-projection and re-truncation.
/// Throws BlowUpError when the result is not finite.
SimState step(const SimState& state, double dt, const SolverConfig& cfg);

/// safety * min(dx / max|u|, 1 / (2 a b m^2 e^{b m^2})) capped at dt_max,
/// where m = max|u|; dt_max when u = 0.
double cfl_dt(const SimState& state, const SolverConfig& cfg);

/// The step size the config's policy prescribes at `state`, clipped so the
/// run lands on t_end.
double next_dt(const SimState& state, const SolverConfig& cfg);

struct RunOptions {
  bool record_trajectory = false;
  /// Called after every accepted step with the step size that produced it.
  std::function<void(const SimState& before, const SimState& after, double dt)> on_step;
};

struct RunResult {
  EnergyLedger ledger;
  Trajectory trajectory;
  SimState final_state;
  /// max_m (||u_{m+1}||^2 - ||u_m||^2) over all steps; <= 0 for a monotone run.
  double max_step_growth = 0.0;
  long steps = 0;
};

/// Advances to t_end, sampling the ledger (and trajectory) every
/// output_every steps and at the final step.
RunResult run(const SolverConfig& cfg, const SpectralVectorField& u0, const RunOptions& options = {});

struct GronwallReport {
  double lambda0 = 0.0;
  std::vector<double> times;
  std::vector<double> w_norm_sq;
  std::vector<double> bound;          // ||w0||^2 e^{lambda0 t}
  std::vector<double> bound_doubled;  // ||w0||^2 e^{2 lambda0 t}
  double margin = 0.0;                // max w_norm_sq / bound
  double margin_doubled = 0.0;        // max w_norm_sq / bound_doubled
};

/// Runs u0 and u0 + perturbation on one shared step sequence (chosen from the
/// unperturbed trajectory) and compares ||u - v||^2 with ||w0||^2 e^{lambda0 t}.
GronwallReport twin_run(const SolverConfig& cfg, const SpectralVectorField& u0,
                        const SpectralVectorField& perturbation);

/// Compares ||u(t + eps) - u(t)||^2 with ||u(eps) - u0||^2 e^{lambda0 t} for
/// eps = shift_steps * dt on a fixed-step trajectory (fixed policy required).
GronwallReport shifted_twin_run(const SolverConfig& cfg, const SpectralVectorField& u0, int shift_steps);

}  // namespace ednse

#endif  // EDNSE_SOLVER_HPP
