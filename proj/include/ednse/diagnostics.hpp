// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDNSE_DIAGNOSTICS_HPP
#define EDNSE_DIAGNOSTICS_HPP

#include <array>
#include <optional>
#include <vector>

#include "ednse/solver_config.hpp"

namespace ednse {

// Energy ledger ---------------------------------------------------------------

/// Rows below -kEnergySlackTolerance * ||u0||^2 raise EnergyViolation.
inline constexpr double kEnergySlackTolerance = 1e-6;

/// One sample of ||u(t)||^2 + 2 nu int ||grad u||^2 + 2a int ||h-density||_{L^1} <= ||u0||^2.
struct EnergyLedgerRow {
  double t = 0.0;
  double l2_sq = 0.0;
  double grad_integral = 0.0;
  double damp_integral = 0.0;
  double budget = 0.0;
  double slack = 0.0;

  // Integrands at t and the reference energy, carried for the trapezoid rule.
  long step = 0;
  double grad_rate = 0.0;
  double damp_rate = 0.0;
  double initial_l2_sq = 0.0;
};

using EnergyLedger = std::vector<EnergyLedgerRow>;

EnergyLedgerRow initial_ledger_row(const SimState& state, const SolverConfig& cfg);

/// Trapezoid update from `prev`. Throws EnergyViolation naming the step when
/// the slack drops below tolerance.
EnergyLedgerRow update_ledger(const EnergyLedgerRow& prev, const SimState& state, const SolverConfig& cfg);

// Decay ----------------------------------------------------------------------------

struct DecayCrossing {
  double epsilon = 0.0;
  /// First ledger time with ||u|| <= epsilon ||u0||; +inf when never reached.
  double t_cross = 0.0;
};

inline const std::vector<double> kDefaultDecayLevels{0.5, 0.1, 0.01};

std::vector<DecayCrossing> decay_report(const EnergyLedger& ledger,
                                        const std::vector<double>& epsilons = kDefaultDecayLevels);

// Trajectory -------------------------------------------------------------------------

/// Samples of a run stored on the modes inside the Friedrichs ball only.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(const GridSpec& grid, double radius);

  void record(const SimState& state);
  std::size_t size() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }
  SpectralVectorField sample(std::size_t i) const;
  const GridSpec& grid() const { return grid_; }

  /// Sum over the support of weight(k^2) |u_i(k) - u_j(k)|^2.
  double weighted_distance_sq(std::size_t i, std::size_t j, const std::vector<double>& weights) const;
  /// weight(k^2) evaluated on the stored support.
  template <class F>
  std::vector<double> support_weights(F weight) const {
    std::vector<double> w(support_k2_.size());
    for (std::size_t m = 0; m < w.size(); ++m) w[m] = weight(support_k2_[m]);
    return w;
  }

 private:
  GridSpec grid_{};
  std::vector<std::size_t> support_;
  std::vector<double> support_k2_;
  std::vector<double> times_;
  std::vector<std::vector<Complex>> samples_;
};

// Frequency split and Duhamel pieces ----------------------------------------------------------

/// Integrands of the three forced Duhamel pieces at one state, each
/// Leray-projected and cut off at the Friedrichs radius:
///   advection  = -P div(u (x) u)
///   supercubic = -a P (e^{b|u|^2} - 1 - b|u|^2) u
///   cubic      = -a b P |u|^2 u
/// For polynomial damping the whole damping term is in `supercubic`.
struct DuhamelIntegrands {
  SpectralVectorField advection;
  SpectralVectorField supercubic;
  SpectralVectorField cubic;
};

DuhamelIntegrands duhamel_integrands(const SpectralVectorField& u, const SolverConfig& cfg);

struct DecompositionReport {
  double delta = 0.0;
  double t = 0.0;
  double v_norm = 0.0;
  double w_norm = 0.0;
  std::array<double, 4> f_norms{};
  double recon_error = 0.0;
};

/// The four accumulators f_{delta,1..4}, stored on the band |k| <= delta.
/// f_1 starts at the low-passed initial datum and the others at zero.
class DuhamelAccumulators {
 public:
  DuhamelAccumulators(const SpectralVectorField& u0, double delta);

  double delta() const { return delta_; }
  /// Number of nonzero lattice wavevectors in the band.
  std::size_t band_modes() const;

  /// F <- E (F + dt G) with E = e^{-nu |k|^2 dt}; G = 0 for f_1.
  void advance(const DuhamelIntegrands& g, double dt, double viscosity);
  DecompositionReport report(const SimState& state) const;
  SpectralVectorField accumulator(int piece) const;

 private:
  GridSpec grid_;
  double delta_;
  std::vector<std::size_t> band_;
  std::vector<double> band_k2_;
  std::array<std::array<std::vector<Complex>, 3>, 4> f_;
};

/// Computes the integrands at `state` and advances every accumulator by dt.
void duhamel_update(std::vector<DuhamelAccumulators>& accumulators, const SimState& state, double dt,
                    const SolverConfig& cfg);

struct DeltaSeries {
  double delta = 0.0;
  std::vector<DecompositionReport> reports;
};

struct DeltaScalingRow {
  double delta = 0.0;
  std::size_t band_modes = 0;
  bool usable = false;
  double sup_v = 0.0;
  std::array<double, 4> sup_f{};
  /// d log sup_f / d log delta against the previous (smaller) delta.
  std::array<std::optional<double>, 4> slope{};
};

struct DeltaScalingTable {
  std::vector<DeltaScalingRow> rows;  // sorted by increasing delta
  /// sup_t ||f_k|| never increases as delta shrinks, for k = 1..4.
  bool monotone = true;
};

DeltaScalingTable delta_scaling_probe(const std::vector<DeltaSeries>& series, const GridSpec& grid);

/// delta^{-2} ||grad w_delta||^2 - ||w_delta||^2 for w_delta = high_pass(u, delta).
double bernstein_check(const SpectralVectorField& u, double delta);

// Equicontinuity ----------------------------------------------------------------------------

struct EquicontinuityBin {
  double gap_lo = 0.0;
  double gap_hi = 0.0;
  std::size_t pairs = 0;
  /// Max ||u(t2) - u(t1)||_{H^{-s0}} over pairs in the bin; empty when no pair.
  std::optional<double> modulus;
};

struct EquicontinuityReport {
  double s0 = 3.0;
  std::vector<EquicontinuityBin> bins;
};

inline const std::vector<double> kDefaultGapEdges{0.0, 0.05, 0.1, 0.2, 0.4, 0.8};

/// Bins are [edges[i], edges[i+1]); pairs with zero gap are ignored.
EquicontinuityReport equicontinuity_modulus(const Trajectory& trajectory, double s0 = 3.0,
                                            const std::vector<double>& edges = kDefaultGapEdges);

}  // namespace ednse

#endif  // EDNSE_DIAGNOSTICS_HPP
