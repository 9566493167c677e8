// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDNSE_SOLVER_CONFIG_HPP
#define EDNSE_SOLVER_CONFIG_HPP

#include <cstdint>
#include <optional>

#include "ednse/damping.hpp"
#include "ednse/field.hpp"

namespace ednse {

enum class DtPolicy { fixed, cfl };

struct SolverConfig {
  GridSpec grid;
  /// Friedrichs radius; unset means the dealias radius of the grid.
  std::optional<double> cutoff_R;
  DampingParams damping;
  double viscosity = 1.0;
  /// When false the advection term is dropped (heat flow plus damping).
  bool advection = true;
  DtPolicy dt_policy = DtPolicy::cfl;
  // The ledger's trapezoid error is about 0.75 dt^2 ||u0||^2 nu^2 |k|^4 for a
  // single shell, so unit-amplitude data needs dt near 2.5e-4 to stay within
  // the 1e-6 relative slack tolerance.
  double dt = 2.5e-4;
  double cfl_safety = 0.5;
  double dt_max = 2.5e-4;
  double t_end = 1.0;
  int output_every = 1;
  std::uint64_t seed = 0;

  double cutoff() const { return cutoff_R.value_or(grid.dealias_radius()); }
  void validate() const;
  bool operator==(const SolverConfig&) const = default;
};

struct SimState {
  double t = 0.0;
  long step = 0;
  SpectralVectorField u;
};

}  // namespace ednse

#endif  // EDNSE_SOLVER_CONFIG_HPP
