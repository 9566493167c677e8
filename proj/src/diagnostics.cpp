// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include "ednse/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ednse/error.hpp"
#include "ednse/spectral.hpp"
#include "pseudo.hpp"

namespace ednse {

namespace {

double damping_rate(const SimState& state, const SolverConfig& cfg) {
  if (cfg.damping.kind == DampingKind::none) return 0.0;
  const PhysicalVectorField phys = detail::inverse_unchecked(state.u);
  return 2.0 * cfg.damping.a * dissipation_density_l1(phys, cfg.damping);
}

}  // namespace

EnergyLedgerRow initial_ledger_row(const SimState& state, const SolverConfig& cfg) {
  EnergyLedgerRow row;
  row.t = state.t;
  row.step = state.step;
  row.l2_sq = l2_norm_sq(state.u);
  row.budget = row.l2_sq;
  row.initial_l2_sq = row.l2_sq;
  row.grad_rate = 2.0 * cfg.viscosity * gradient_norm_sq(state.u);
  row.damp_rate = damping_rate(state, cfg);
  return row;
}

EnergyLedgerRow update_ledger(const EnergyLedgerRow& prev, const SimState& state, const SolverConfig& cfg) {
  if (state.t < prev.t) throw InvalidArgument("update_ledger: samples must be in increasing time");
  EnergyLedgerRow row;
  row.t = state.t;
  row.step = state.step;
  row.initial_l2_sq = prev.initial_l2_sq;
  row.l2_sq = l2_norm_sq(state.u);
  row.grad_rate = 2.0 * cfg.viscosity * gradient_norm_sq(state.u);
  row.damp_rate = damping_rate(state, cfg);
  const double h = state.t - prev.t;
  row.grad_integral = prev.grad_integral + 0.5 * h * (prev.grad_rate + row.grad_rate);
  row.damp_integral = prev.damp_integral + 0.5 * h * (prev.damp_rate + row.damp_rate);
  row.budget = row.l2_sq + row.grad_integral + row.damp_integral;
  row.slack = row.initial_l2_sq - row.budget;
  if (row.slack < -kEnergySlackTolerance * row.initial_l2_sq) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "energy inequality violated at step " << row.step << " (t = " << row.t << "): slack " << row.slack
        << " below -" << kEnergySlackTolerance << " * " << row.initial_l2_sq;
    throw EnergyViolation(msg.str());
  }
  return row;
}

std::vector<DecayCrossing> decay_report(const EnergyLedger& ledger, const std::vector<double>& epsilons) {
  if (ledger.empty()) throw InvalidArgument("decay_report: empty ledger");
  const double initial = std::sqrt(ledger.front().l2_sq);
  std::vector<DecayCrossing> out;
  for (double eps : epsilons) {
    DecayCrossing c{eps, std::numeric_limits<double>::infinity()};
    for (const auto& row : ledger) {
      if (std::sqrt(row.l2_sq) <= eps * initial) {
        c.t_cross = row.t;
        break;
      }
    }
    out.push_back(c);
  }
  return out;
}

// Trajectory ----------------------------------------------------------------------

Trajectory::Trajectory(const GridSpec& grid, double radius) : grid_(grid) {
  const auto k = detail::axis_wavenumbers(grid);
  const int n = grid.n;
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        const double k2 = k[i0] * k[i0] + k[i1] * k[i1] + k[i2] * k[i2];
        if (!in_closed_ball(k2, radius)) continue;
        support_.push_back(grid.flat(i0, i1, i2));
        support_k2_.push_back(k2);
      }
}

void Trajectory::record(const SimState& state) {
  if (!(state.u.grid() == grid_)) throw InvalidArgument("Trajectory::record: grid mismatch");
  const std::size_t m = support_.size();
  std::vector<Complex> packed(3 * m);
  for (int j = 0; j < 3; ++j)
    for (std::size_t s = 0; s < m; ++s) packed[j * m + s] = state.u.at(j, support_[s]);
  times_.push_back(state.t);
  samples_.push_back(std::move(packed));
}

SpectralVectorField Trajectory::sample(std::size_t i) const {
  SpectralVectorField u(grid_);
  const std::size_t m = support_.size();
  const auto& packed = samples_.at(i);
  for (int j = 0; j < 3; ++j)
    for (std::size_t s = 0; s < m; ++s) u.at(j, support_[s]) = packed[j * m + s];
  u.set_divergence_free(true);
  return u;
}

double Trajectory::weighted_distance_sq(std::size_t i, std::size_t j, const std::vector<double>& weights) const {
  const auto& a = samples_.at(i);
  const auto& b = samples_.at(j);
  const std::size_t m = support_.size();
  double sum = 0.0;
  for (std::size_t s = 0; s < m; ++s) {
    const double e = std::norm(a[s] - b[s]) + std::norm(a[m + s] - b[m + s]) + std::norm(a[2 * m + s] - b[2 * m + s]);
    sum += weights[s] * e;
  }
  return sum;
}

// Duhamel pieces ----------------------------------------------------------------------

DuhamelIntegrands duhamel_integrands(const SpectralVectorField& u, const SolverConfig& cfg) {
  const GridSpec& grid = cfg.grid;
  const double radius = cfg.cutoff();
  DuhamelIntegrands g{SpectralVectorField(grid), SpectralVectorField(grid), SpectralVectorField(grid)};
  const PhysicalVectorField phys = detail::dealiased_physical(u);
  if (cfg.advection) g.advection = detail::advection_divergence(phys);

  const DampingParams& p = cfg.damping;
  if (p.kind != DampingKind::none) {
    const PhysicalVectorField raw = radius <= grid.dealias_radius() ? phys : detail::inverse_unchecked(u);
    if (p.kind == DampingKind::polynomial) {
      g.supercubic = forward_transform(damping_force(raw, p));
    } else {
      PhysicalVectorField super(grid);
      PhysicalVectorField cubic(grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double s2 = raw.speed_sq(i);
        const double z = p.b * s2;
        if (!(z <= kMaxDampingExponent)) throw BlowUpError("duhamel_integrands: damping exponent overflow");
        const double hs = p.a * expm1_minus_linear(z);
        const double hc = p.a * z;
        for (int j = 0; j < 3; ++j) {
          super.at(j, i) = hs * raw.at(j, i);
          cubic.at(j, i) = hc * raw.at(j, i);
        }
      }
      g.supercubic = forward_transform(super);
      g.cubic = forward_transform(cubic);
    }
  }
  for (SpectralVectorField* f : {&g.advection, &g.supercubic, &g.cubic}) {
    detail::project_truncate(*f, radius);
    *f *= -1.0;
  }
  return g;
}

DuhamelAccumulators::DuhamelAccumulators(const SpectralVectorField& u0, double delta)
    : grid_(u0.grid()), delta_(delta) {
  if (!(delta > 0.0)) throw InvalidArgument("DuhamelAccumulators: delta must be positive");
  const auto k = detail::axis_wavenumbers(grid_);
  const int n = grid_.n;
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        const double k2 = k[i0] * k[i0] + k[i1] * k[i1] + k[i2] * k[i2];
        if (!in_closed_ball(k2, delta)) continue;
        band_.push_back(grid_.flat(i0, i1, i2));
        band_k2_.push_back(k2);
      }
  for (auto& piece : f_)
    for (auto& comp : piece) comp.assign(band_.size(), Complex{});
  for (int j = 0; j < 3; ++j)
    for (std::size_t s = 0; s < band_.size(); ++s) f_[0][j][s] = u0.at(j, band_[s]);
}

std::size_t DuhamelAccumulators::band_modes() const {
  return static_cast<std::size_t>(std::count_if(band_k2_.begin(), band_k2_.end(), [](double k2) { return k2 > 0.0; }));
}

void DuhamelAccumulators::advance(const DuhamelIntegrands& g, double dt, double viscosity) {
  const SpectralVectorField* forcing[3] = {&g.advection, &g.supercubic, &g.cubic};
  for (std::size_t s = 0; s < band_.size(); ++s) {
    const double e = std::exp(-viscosity * band_k2_[s] * dt);
    const std::size_t idx = band_[s];
    for (int j = 0; j < 3; ++j) {
      f_[0][j][s] *= e;
      for (int p = 0; p < 3; ++p) {
        Complex& acc = f_[p + 1][j][s];
        acc = e * (acc + dt * forcing[p]->at(j, idx));
      }
    }
  }
}

DecompositionReport DuhamelAccumulators::report(const SimState& state) const {
  DecompositionReport r;
  r.delta = delta_;
  r.t = state.t;
  double v2 = 0.0;
  double recon2 = 0.0;
  std::array<double, 4> f2{};
  for (std::size_t s = 0; s < band_.size(); ++s) {
    const std::size_t idx = band_[s];
    for (int j = 0; j < 3; ++j) {
      const Complex v = state.u.at(j, idx);
      v2 += std::norm(v);
      Complex sum{};
      for (int p = 0; p < 4; ++p) {
        f2[p] += std::norm(f_[p][j][s]);
        sum += f_[p][j][s];
      }
      recon2 += std::norm(v - sum);
    }
  }
  r.v_norm = std::sqrt(v2);
  r.w_norm = l2_norm(high_pass(state.u, delta_));
  for (int p = 0; p < 4; ++p) r.f_norms[p] = std::sqrt(f2[p]);
  r.recon_error = std::sqrt(recon2);
  return r;
}

SpectralVectorField DuhamelAccumulators::accumulator(int piece) const {
  SpectralVectorField out(grid_);
  const auto& f = f_.at(piece);
  for (int j = 0; j < 3; ++j)
    for (std::size_t s = 0; s < band_.size(); ++s) out.at(j, band_[s]) = f[j][s];
  return out;
}

void duhamel_update(std::vector<DuhamelAccumulators>& accumulators, const SimState& state, double dt,
                    const SolverConfig& cfg) {
  if (accumulators.empty()) return;
  const DuhamelIntegrands g = duhamel_integrands(state.u, cfg);
  for (auto& acc : accumulators) acc.advance(g, dt, cfg.viscosity);
}

DeltaScalingTable delta_scaling_probe(const std::vector<DeltaSeries>& series, const GridSpec& grid) {
  DeltaScalingTable table;
  const auto k = detail::axis_wavenumbers(grid);
  for (const auto& s : series) {
    DeltaScalingRow row;
    row.delta = s.delta;
    for (int i0 = 0; i0 < grid.n; ++i0)
      for (int i1 = 0; i1 < grid.n; ++i1)
        for (int i2 = 0; i2 < grid.n; ++i2) {
          const double k2 = k[i0] * k[i0] + k[i1] * k[i1] + k[i2] * k[i2];
          if (k2 > 0.0 && in_closed_ball(k2, s.delta)) ++row.band_modes;
        }
    row.usable = row.band_modes >= 2;
    for (const auto& r : s.reports) {
      row.sup_v = std::max(row.sup_v, r.v_norm);
      for (int p = 0; p < 4; ++p) row.sup_f[p] = std::max(row.sup_f[p], r.f_norms[p]);
    }
    table.rows.push_back(row);
  }
  std::sort(table.rows.begin(), table.rows.end(), [](const auto& a, const auto& b) { return a.delta < b.delta; });
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    auto& cur = table.rows[i];
    const auto& prev = table.rows[i - 1];
    for (int p = 0; p < 4; ++p) {
      if (prev.sup_f[p] > cur.sup_f[p]) table.monotone = false;
      if (prev.sup_f[p] > 0.0 && cur.sup_f[p] > 0.0 && cur.delta > prev.delta) {
        cur.slope[p] = std::log(cur.sup_f[p] / prev.sup_f[p]) / std::log(cur.delta / prev.delta);
      }
    }
  }
  return table;
}

double bernstein_check(const SpectralVectorField& u, double delta) {
  const SpectralVectorField w = high_pass(u, delta);
  return gradient_norm_sq(w) / (delta * delta) - l2_norm_sq(w);
}

// Equicontinuity -------------------------------------------------------------------------

EquicontinuityReport equicontinuity_modulus(const Trajectory& trajectory, double s0, const std::vector<double>& edges) {
  if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end())) {
    throw InvalidArgument("equicontinuity_modulus: need at least two increasing bin edges");
  }
  EquicontinuityReport report;
  report.s0 = s0;
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) report.bins.push_back({edges[b], edges[b + 1], 0, std::nullopt});
  const auto weights = trajectory.support_weights([s0](double k2) { return std::pow(1.0 + k2, -s0); });
  const auto& t = trajectory.times();
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      const double gap = std::abs(t[j] - t[i]);
      if (gap == 0.0) continue;
      const auto it = std::upper_bound(edges.begin(), edges.end(), gap);
      if (it == edges.begin() || it == edges.end()) continue;
      auto& bin = report.bins[static_cast<std::size_t>(it - edges.begin()) - 1];
      const double d = std::sqrt(trajectory.weighted_distance_sq(i, j, weights));
      ++bin.pairs;
      bin.modulus = std::max(bin.modulus.value_or(0.0), d);
    }
  }
  return report;
}

}  // namespace ednse
