// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "ednse/damping.hpp"
#include "ednse/diagnostics.hpp"
#include "ednse/error.hpp"
#include "ednse/experiments.hpp"
#include "ednse/io.hpp"
#include "ednse/solver.hpp"
#include "ednse/spectral.hpp"

namespace ednse {

namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

class Output {
 public:
  Output(const RunConfig& cfg, ScenarioResult& result) : dir_(cfg.output_dir), result_(result) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory '" + dir_.string() + "': " + ec.message());
  }

  fs::path file(const std::string& name) {
    fs::path p = dir_ / name;
    result_.artifacts.push_back(p.string());
    return p;
  }

  void metric(const std::string& name, double value) { result_.metrics.emplace_back(name, value); }

  void fail(const std::string& why) {
    result_.pass = false;
    if (!result_.reason.empty()) result_.reason += "; ";
    result_.reason += why;
  }

 private:
  fs::path dir_;
  ScenarioResult& result_;
};

void write_text_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                      const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

double min_slack(const EnergyLedger& ledger) {
  double m = kInf;
  for (const auto& row : ledger) m = std::min(m, row.slack);
  return ledger.empty() ? 0.0 : m;
}

void decay_metrics(Output& out, const std::vector<DecayCrossing>& crossings, const std::string& prefix) {
  for (const auto& c : crossings) out.metric(prefix + "t_cross[" + tag(c.epsilon) + "]", c.t_cross);
}

bool crossings_monotone(std::vector<DecayCrossing> crossings) {
  std::sort(crossings.begin(), crossings.end(),
            [](const DecayCrossing& x, const DecayCrossing& y) { return x.epsilon > y.epsilon; });
  for (std::size_t i = 1; i < crossings.size(); ++i)
    if (!(crossings[i - 1].t_cross <= crossings[i].t_cross)) return false;
  return true;
}

// energy_decay ------------------------------------------------------------------------

void energy_decay(const RunConfig& cfg, Output& out) {
  const SpectralVectorField u0 = make_initial_field(cfg, cfg.solver.grid);
  const RunResult r = run(cfg.solver, u0);
  const double e0 = r.ledger.front().initial_l2_sq;
  const auto crossings = decay_report(r.ledger, cfg.decay_epsilons);

  io::write_csv(io::ledger_rows(r.ledger), io::CsvSchema::ledger, out.file("ledger.csv"));
  io::write_csv(io::decay_rows(crossings), io::CsvSchema::decay, out.file("decay.csv"));
  if (cfg.write_checkpoint) io::write_checkpoint(out.file("final.ckpt"), r.final_state);

  const double slack = min_slack(r.ledger);
  out.metric("initial_l2_sq", e0);
  out.metric("final_l2_sq", r.ledger.back().l2_sq);
  out.metric("min_slack", slack);
  out.metric("slack_floor", -kEnergySlackTolerance * e0);
  out.metric("max_step_growth", r.max_step_growth);
  out.metric("steps", static_cast<double>(r.steps));
  decay_metrics(out, crossings, "");

  if (slack < -kEnergySlackTolerance * e0) out.fail("ledger slack below tolerance");
  if (r.max_step_growth > 0.0) out.fail("L2 norm increased during a step");
}

// Gronwall twins ----------------------------------------------------------------------------

void gronwall_metrics(Output& out, const GronwallReport& g) {
  out.metric("lambda0", g.lambda0);
  out.metric("margin", g.margin);
  out.metric("margin_doubled", g.margin_doubled);
  out.metric("w0_norm_sq", g.w_norm_sq.empty() ? 0.0 : g.w_norm_sq.front());
  out.metric("w_final_norm_sq", g.w_norm_sq.empty() ? 0.0 : g.w_norm_sq.back());
  out.metric("margin_threshold", thresholds::kGronwallMargin);
}

void gronwall_twin(const RunConfig& cfg, Output& out) {
  const GridSpec& grid = cfg.solver.grid;
  const SpectralVectorField u0 = make_initial_field(cfg, grid);
  const double size = cfg.twin_perturbation * l2_norm(u0);
  const SpectralVectorField w0 =
      random_divfree_field(grid, cfg.initial.slope, cfg.initial.k_peak, cfg.solver.seed + 1, size);
  const GronwallReport g = twin_run(cfg.solver, u0, w0);
  io::write_csv(io::gronwall_rows(g), io::CsvSchema::gronwall, out.file("gronwall.csv"));
  gronwall_metrics(out, g);
  if (!(g.margin <= thresholds::kGronwallMargin)) out.fail("Gronwall margin above threshold");
}

void shifted_continuity(const RunConfig& cfg, Output& out) {
  const SpectralVectorField u0 = make_initial_field(cfg, cfg.solver.grid);
  const GronwallReport g = shifted_twin_run(cfg.solver, u0, cfg.shift_steps);
  io::write_csv(io::gronwall_rows(g), io::CsvSchema::gronwall, out.file("gronwall.csv"));
  gronwall_metrics(out, g);
  out.metric("shift_time", cfg.shift_steps * cfg.solver.dt);
  const bool needs_doubled =
      g.margin > thresholds::kGronwallMargin && g.margin_doubled <= thresholds::kGronwallMargin;
  out.metric("needs_doubled_exponent", needs_doubled ? 1.0 : 0.0);
  if (!(g.margin <= thresholds::kGronwallMargin)) out.fail("continuity margin above threshold");
}

// galerkin_convergence ------------------------------------------------------------------------

void galerkin_convergence(const RunConfig& cfg, Output& out) {
  std::vector<int> ns = cfg.resolutions;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.size() < 2) throw InvalidArgument("galerkin_convergence needs two distinct resolutions");

  GridSpec fine = cfg.solver.grid;
  fine.n = ns.back();
  const SpectralVectorField u_fine = make_initial_field(cfg, fine);

  std::vector<SpectralVectorField> finals;
  std::vector<EquicontinuityReport> tables;
  for (int n : ns) {
    SolverConfig sc = cfg.solver;
    sc.grid.n = n;
    if (sc.cutoff_R && *sc.cutoff_R > sc.grid.max_wavenumber()) {
      throw InvalidArgument("solver.cutoff_R exceeds the lattice of resolution " + std::to_string(n));
    }
    Trajectory traj(sc.grid, sc.cutoff());
    double next_sample = 0.0;
    const double interval = cfg.equicontinuity_interval;
    auto sample = [&](const SimState& s) {
      if (s.t >= next_sample - 1e-9 * interval) {
        traj.record(s);
        next_sample = (std::floor(s.t / interval + 1e-9) + 1.0) * interval;
      }
    };
    RunOptions opts;
    bool first = true;
    opts.on_step = [&](const SimState& before, const SimState& after, double) {
      if (first) {
        sample(before);
        first = false;
      }
      sample(after);
    };
    const RunResult r = run(sc, resample(u_fine, sc.grid), opts);
    finals.push_back(resample(r.final_state.u, fine));
    tables.push_back(equicontinuity_modulus(traj, cfg.equicontinuity_s0, cfg.gap_edges));
  }

  std::vector<io::CsvRow> conv;
  std::vector<double> diffs;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double diff = l2_norm(finals[i] - finals.back());
    diffs.push_back(diff);
    conv.push_back({static_cast<double>(ns[i]), l2_norm(finals[i]), diff});
    out.metric("diff_to_finest[" + std::to_string(ns[i]) + "]", diff);
  }
  io::write_table({"n", "l2_final", "diff_to_finest"}, conv, out.file("galerkin.csv"));

  std::vector<io::CsvRow> eq;
  for (std::size_t i = 0; i < ns.size(); ++i)
    for (const auto& bin : tables[i].bins)
      eq.push_back({static_cast<double>(ns[i]), bin.gap_lo, bin.gap_hi, static_cast<double>(bin.pairs),
                    bin.modulus.value_or(kNaN)});
  io::write_table({"n", "gap_lo", "gap_hi", "pairs", "modulus"}, eq, out.file("equicontinuity.csv"));

  for (std::size_t i = 0; i + 2 < diffs.size(); ++i)
    if (diffs[i + 1] > diffs[i]) out.fail("truncation error does not shrink with resolution");

  const auto& coarse = tables[tables.size() - 2].bins;
  const auto& finest = tables.back().bins;
  double worst = 1.0;
  for (std::size_t b = 0; b < finest.size(); ++b) {
    const auto& x = coarse[b];
    const auto& y = finest[b];
    if (x.pairs < thresholds::kEquicontinuityMinPairs || y.pairs < thresholds::kEquicontinuityMinPairs) {
      out.fail("gap bin [" + tag(y.gap_lo) + ", " + tag(y.gap_hi) + ") has fewer than " +
               std::to_string(thresholds::kEquicontinuityMinPairs) + " pairs");
      continue;
    }
    const double p = *x.modulus;
    const double q = *y.modulus;
    const double ratio = (p == 0.0 && q == 0.0) ? 1.0 : std::max(p, q) / std::min(p, q);
    out.metric("modulus_ratio[" + tag(y.gap_lo) + "]", ratio);
    worst = std::max(worst, ratio);
  }
  out.metric("modulus_ratio_max", worst);
  if (!(worst <= thresholds::kEquicontinuityFactor)) out.fail("modulus tables differ by more than the allowed factor");
}

// frequency_split ----------------------------------------------------------------------------------

struct SplitRun {
  std::vector<DeltaSeries> series;
  std::vector<double> v0;  // ||v_delta(0)||
  double parseval = 0.0;
  double bernstein = kInf;
  std::vector<double> final_recon;
};

SplitRun split_run(const SolverConfig& sc, const SpectralVectorField& u0, const std::vector<double>& deltas) {
  SplitRun out;
  std::vector<DuhamelAccumulators> accs;
  out.series.resize(deltas.size());
  long last_recorded = -1;

  auto sample = [&](const SimState& s) {
    const double u_sq = l2_norm_sq(s.u);
    for (std::size_t d = 0; d < deltas.size(); ++d) {
      const DecompositionReport rep = accs[d].report(s);
      out.series[d].reports.push_back(rep);
      const double split = rep.v_norm * rep.v_norm + rep.w_norm * rep.w_norm;
      if (u_sq > 0.0) out.parseval = std::max(out.parseval, std::abs(split - u_sq) / u_sq);
      out.bernstein = std::min(out.bernstein, bernstein_check(s.u, deltas[d]));
    }
    last_recorded = s.step;
  };

  RunOptions opts;
  opts.on_step = [&](const SimState& before, const SimState& after, double dt) {
    if (accs.empty()) {
      for (double d : deltas) accs.emplace_back(before.u, d);
      for (const auto& a : accs) out.v0.push_back(l2_norm(low_pass(before.u, a.delta())));
      sample(before);
    }
    duhamel_update(accs, before, dt, sc);
    if (after.step % sc.output_every == 0) sample(after);
  };
  for (std::size_t d = 0; d < deltas.size(); ++d) out.series[d].delta = deltas[d];
  const RunResult r = run(sc, u0, opts);
  if (last_recorded != r.final_state.step) sample(r.final_state);
  for (const auto& s : out.series) out.final_recon.push_back(s.reports.back().recon_error);
  return out;
}

void frequency_split(const RunConfig& cfg, Output& out) {
  const GridSpec& grid = cfg.solver.grid;
  const SpectralVectorField u0 = make_initial_field(cfg, grid);
  const SplitRun coarse = split_run(cfg.solver, u0, cfg.split_deltas);

  std::vector<DecompositionReport> all;
  for (const auto& s : coarse.series) all.insert(all.end(), s.reports.begin(), s.reports.end());
  io::write_csv(io::split_rows(all), io::CsvSchema::split, out.file("split.csv"));

  const DeltaScalingTable table = delta_scaling_probe(coarse.series, grid);
  std::vector<io::CsvRow> rows;
  for (const auto& row : table.rows) {
    io::CsvRow r{row.delta, static_cast<double>(row.band_modes), row.usable ? 1.0 : 0.0, row.sup_v};
    for (double f : row.sup_f) r.push_back(f);
    for (const auto& s : row.slope) r.push_back(s.value_or(kNaN));
    rows.push_back(r);
  }
  io::write_table({"delta", "band_modes", "usable", "sup_v", "sup_f1", "sup_f2", "sup_f3", "sup_f4", "slope_f1",
                   "slope_f2", "slope_f3", "slope_f4"},
                  rows, out.file("delta_scaling.csv"));

  double contraction = 0.0;
  for (std::size_t d = 0; d < coarse.series.size(); ++d) {
    double sup_f1 = 0.0;
    for (const auto& rep : coarse.series[d].reports) sup_f1 = std::max(sup_f1, rep.f_norms[0]);
    if (coarse.v0[d] > 0.0) contraction = std::max(contraction, sup_f1 / coarse.v0[d] - 1.0);
    else contraction = std::max(contraction, sup_f1);
  }

  out.metric("parseval_max_rel", coarse.parseval);
  out.metric("bernstein_min", coarse.bernstein);
  out.metric("f1_contraction_excess", contraction);
  out.metric("delta_monotone", table.monotone ? 1.0 : 0.0);
  for (const auto& row : table.rows)
    for (int k = 1; k < 4; ++k)
      if (row.slope[k]) out.metric("slope_f" + std::to_string(k + 1) + "[" + tag(row.delta) + "]", *row.slope[k]);

  if (!(coarse.parseval <= thresholds::kParsevalSplit)) out.fail("Parseval split not exact");
  if (!(coarse.bernstein >= thresholds::kBernstein)) out.fail("negative Bernstein residual");
  if (!(contraction <= thresholds::kContraction)) out.fail("f1 exceeds the low-passed initial norm");
  if (!table.monotone) out.fail("sup_t ||f_k|| increases as delta shrinks");

  if (cfg.split_refine) {
    SolverConfig half = cfg.solver;
    half.dt = cfg.solver.dt / 2.0;
    half.output_every = cfg.solver.output_every * 2;
    const SplitRun fine = split_run(half, u0, cfg.split_deltas);
    double lo = kInf;
    double hi = 0.0;
    std::size_t counted = 0;
    std::vector<io::CsvRow> ref;
    for (std::size_t d = 0; d < cfg.split_deltas.size(); ++d) {
      const double c = coarse.final_recon[d];
      const double f = fine.final_recon[d];
      const double ratio = f > 0.0 ? c / f : kNaN;
      ref.push_back({cfg.split_deltas[d], c, f, ratio});
      out.metric("recon_error[" + tag(cfg.split_deltas[d]) + "]", c);
      // Bands the trajectory never reaches carry no quadrature error to refine.
      if (c <= 1e-13 * std::max(1.0, l2_norm(u0))) continue;
      out.metric("recon_ratio[" + tag(cfg.split_deltas[d]) + "]", ratio);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      ++counted;
    }
    io::write_table({"delta", "recon_error_dt", "recon_error_half_dt", "ratio"}, ref, out.file("refinement.csv"));
    out.metric("recon_ratio_min", counted ? lo : kNaN);
    out.metric("recon_ratio_max", counted ? hi : kNaN);
    if (counted == 0) {
      out.fail("no band carries a reconstruction error to refine");
    } else if (!(lo >= thresholds::kReconRatioLow && hi <= thresholds::kReconRatioHigh)) {
      out.fail("reconstruction error does not shrink by a factor in [" + tag(thresholds::kReconRatioLow) + ", " +
               tag(thresholds::kReconRatioHigh) + "] under dt halving");
    }
  }
}

// damping_compare ----------------------------------------------------------------------------------

void damping_compare(const RunConfig& cfg, Output& out) {
  const SpectralVectorField u0 = make_initial_field(cfg, cfg.solver.grid);
  SolverConfig free = cfg.solver;
  free.damping.kind = DampingKind::none;
  const RunResult damped = run(cfg.solver, u0);
  const RunResult undamped = run(free, u0);
  const auto cd = decay_report(damped.ledger, cfg.decay_epsilons);
  const auto cu = decay_report(undamped.ledger, cfg.decay_epsilons);

  io::write_csv(io::ledger_rows(damped.ledger), io::CsvSchema::ledger, out.file("ledger.csv"));
  io::write_csv(io::ledger_rows(undamped.ledger), io::CsvSchema::ledger, out.file("ledger_undamped.csv"));
  io::write_csv(io::decay_rows(cd), io::CsvSchema::decay, out.file("decay.csv"));
  io::write_csv(io::decay_rows(cu), io::CsvSchema::decay, out.file("decay_undamped.csv"));

  decay_metrics(out, cd, "damped_");
  decay_metrics(out, cu, "undamped_");

  // Norm comparison at the sample times both runs share.
  double excess = -kInf;
  std::size_t matched = 0;
  std::size_t j = 0;
  for (const auto& row : damped.ledger) {
    while (j < undamped.ledger.size() && undamped.ledger[j].t < row.t - 1e-12) ++j;
    if (j < undamped.ledger.size() && std::abs(undamped.ledger[j].t - row.t) <= 1e-12) {
      excess = std::max(excess, row.l2_sq - undamped.ledger[j].l2_sq);
      ++matched;
    }
  }
  out.metric("matched_samples", static_cast<double>(matched));
  out.metric("max_l2_sq_excess", matched ? excess : kNaN);

  const double eps_min = *std::min_element(cfg.decay_epsilons.begin(), cfg.decay_epsilons.end());
  for (const auto& c : cd)
    if (c.epsilon == eps_min && !std::isfinite(c.t_cross)) out.fail("damped run never reaches the smallest level");
  if (!crossings_monotone(cd)) out.fail("damped crossing times not monotone in epsilon");
  for (std::size_t i = 0; i < cd.size(); ++i)
    if (cd[i].t_cross > cu[i].t_cross) out.fail("damped run crosses " + tag(cd[i].epsilon) + " after the undamped run");
}

// inequality_sweep ----------------------------------------------------------------------------------

void inequality_sweep(const RunConfig& cfg, Output& out) {
  std::mt19937_64 rng(cfg.solver.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double radius = cfg.sweep_radius;
  auto point = [&] {
    for (;;) {
      Vec3 v{unit(rng), unit(rng), unit(rng)};
      if (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] <= 1.0) return Vec3{radius * v[0], radius * v[1], radius * v[2]};
    }
  };

  std::vector<std::vector<std::string>> rows;
  long total_violations = 0;
  auto sweep = [&](const std::string& check, double param, auto terms) {
    long violations = 0;
    double worst = kInf;
    for (long i = 0; i < cfg.sweep_samples; ++i) {
      const Vec3 x = point();
      const Vec3 y = point();
      const MonotonicityTerms t = terms(x, y, param);
      const double scaled = t.residual() / std::max(1.0, std::abs(t.lhs));
      worst = std::min(worst, scaled);
      if (scaled < thresholds::kMonotonicity) ++violations;
    }
    total_violations += violations;
    rows.push_back({check, io::format_double(param), std::to_string(cfg.sweep_samples), std::to_string(violations),
                    io::format_double(worst)});
    out.metric(check + "_violations[" + tag(param) + "]", static_cast<double>(violations));
    out.metric(check + "_min_residual[" + tag(param) + "]", worst);
  };
  for (double b : cfg.sweep_b) sweep("exp_monotonicity", b, monotonicity_terms_exp);
  for (double beta : cfg.sweep_beta) sweep("poly_monotonicity", beta, monotonicity_terms_poly);
  out.metric("monotonicity_violations", static_cast<double>(total_violations));
  if (total_violations > 0) out.fail("monotonicity inequality violated");

  // Threshold constant.
  const double l11 = lambda0(1.0, 1.0).lambda0;
  out.metric("lambda0[1,1]", l11);
  if (l11 != 0.0) out.fail("lambda0(1, 1) is not zero");

  auto root_residual = [](double a, double b, double l) { return std::abs(a * std::expm1(b * l) - l) / l; };
  const double lhalf = lambda0(0.5, 1.0).lambda0;
  out.metric("lambda0[0.5,1]", lhalf);
  double worst_root = root_residual(0.5, 1.0, lhalf);

  std::uniform_real_distribution<double> a_dist(0.05, 1.0);
  std::uniform_real_distribution<double> b_dist(0.05, 2.0);
  std::uniform_real_distribution<double> frac(0.0, 2.0);
  long bound_failures = 0;
  long partition_failures = 0;
  long partition_checks = 0;
  for (int trial = 0; trial < cfg.sweep_trials; ++trial) {
    double a = 0.0;
    double b = 0.0;
    do {
      a = a_dist(rng);
      b = b_dist(rng);
    } while (a * b >= 1.0);
    const double l = lambda0(a, b).lambda0;
    worst_root = std::max(worst_root, root_residual(a, b, l));
    if (!(l > std::log(1.0 / (a * b)) / b)) ++bound_failures;
    for (int k = 0; k < 100; ++k) {
      const double lam = frac(rng) * l;
      if (lam == 0.0 || std::abs(lam - l) <= 1e-9 * l) continue;
      const bool below = a * std::expm1(b * lam) <= lam;
      if (below != (lam < l)) ++partition_failures;
      ++partition_checks;
    }
  }
  out.metric("lambda0_root_residual_max", worst_root);
  out.metric("lambda0_lower_bound_failures", static_cast<double>(bound_failures));
  out.metric("lambda0_partition_checks", static_cast<double>(partition_checks));
  out.metric("lambda0_partition_failures", static_cast<double>(partition_failures));
  rows.push_back({"lambda0_lower_bound", "0", std::to_string(cfg.sweep_trials), std::to_string(bound_failures),
                  io::format_double(kNaN)});
  rows.push_back({"lambda0_partition", "0", std::to_string(partition_checks), std::to_string(partition_failures),
                  io::format_double(kNaN)});
  if (!(worst_root <= thresholds::kLambdaRootResidual)) out.fail("lambda0 root residual too large");
  if (bound_failures) out.fail("lambda0 below its analytic lower bound");
  if (partition_failures) out.fail("lambda0 does not separate the sublevel set");

  // M_b.
  for (double b : cfg.sweep_b) {
    const double m = m_b_constant(b);
    constexpr int kPoints = 100000;
    const double z_lo = 1e-4 / std::sqrt(b);
    const double z_hi = std::sqrt(kMaxDampingExponent / b);
    long violations = 0;
    double worst = kInf;
    for (int i = 0; i < kPoints; ++i) {
      const double z = z_lo * std::pow(z_hi / z_lo, static_cast<double>(i) / (kPoints - 1));
      const double w = b * z * z;
      const double lhs = expm1_minus_linear(w) * z;
      const double rhs = m * std::expm1(w) * z * z;
      const double scaled = (rhs - lhs) / std::max(1.0, rhs);
      worst = std::min(worst, scaled);
      if (scaled < -thresholds::kMbInequality) ++violations;
    }
    const double scaling = std::abs(m_b_constant(4.0 * b) - 2.0 * m);
    out.metric("m_b[" + tag(b) + "]", m);
    out.metric("m_b_violations[" + tag(b) + "]", static_cast<double>(violations));
    out.metric("m_b_scaling_error[" + tag(b) + "]", scaling);
    rows.push_back({"m_b_inequality", io::format_double(b), std::to_string(kPoints), std::to_string(violations),
                    io::format_double(worst)});
    if (violations) out.fail("M_b inequality violated for b = " + tag(b));
    if (!(scaling <= thresholds::kMbScaling)) out.fail("M_b scaling law off for b = " + tag(b));
  }

  write_text_table({"check", "parameter", "samples", "violations", "min_scaled_residual"}, rows,
                   out.file("sweep.csv"));
}

void write_metrics(const ScenarioResult& r, const fs::path& path) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"pass", r.pass ? "1" : "0"});
  for (const auto& [name, value] : r.metrics) rows.push_back({name, io::format_double(value)});
  write_text_table({"name", "value"}, rows, path);
}

}  // namespace

double ScenarioResult::metric(std::string_view name) const {
  for (const auto& [n, v] : metrics)
    if (n == name) return v;
  throw InvalidArgument("no metric named '" + std::string(name) + "'");
}

bool ScenarioResult::has_metric(std::string_view name) const {
  return std::any_of(metrics.begin(), metrics.end(), [&](const auto& m) { return m.first == name; });
}

SpectralVectorField make_initial_field(const RunConfig& cfg, const GridSpec& grid) {
  const InitialCondition& ic = cfg.initial;
  switch (ic.kind) {
    case InitialCondition::Kind::taylor_green:
      return taylor_green(grid, ic.amplitude);
    case InitialCondition::Kind::random:
      return random_divfree_field(grid, ic.slope, ic.k_peak, cfg.solver.seed, ic.norm);
    case InitialCondition::Kind::checkpoint: {
      const SimState s = io::read_checkpoint(ic.path, grid.dealias_fraction);
      const GridSpec& g = s.u.grid();
      if (g.n != grid.n || g.box_length != grid.box_length) {
        throw InvalidArgument("checkpoint '" + ic.path + "' has n = " + std::to_string(g.n) +
                              ", which does not match the configured grid");
      }
      return s.u;
    }
  }
  throw InvalidArgument("unknown initial condition kind");
}

ScenarioResult run_scenario(const RunConfig& cfg) {
  ScenarioResult result;
  result.scenario = std::string(scenario_name(cfg.scenario));
  result.pass = true;
  try {
    Output out(cfg, result);
    {
      std::ofstream resolved(out.file("run.cfg"), std::ios::binary);
      resolved << serialize_config(cfg);
      if (!resolved) throw IoError("cannot write run.cfg under '" + cfg.output_dir + "'");
    }
    switch (cfg.scenario) {
      case Scenario::energy_decay: energy_decay(cfg, out); break;
      case Scenario::gronwall_twin: gronwall_twin(cfg, out); break;
      case Scenario::shifted_continuity: shifted_continuity(cfg, out); break;
      case Scenario::galerkin_convergence: galerkin_convergence(cfg, out); break;
      case Scenario::frequency_split: frequency_split(cfg, out); break;
      case Scenario::damping_compare: damping_compare(cfg, out); break;
      case Scenario::inequality_sweep: inequality_sweep(cfg, out); break;
    }
    write_metrics(result, out.file("metrics.csv"));
  } catch (const Error& e) {
    result.pass = false;
    result.reason = e.what();
    try {
      write_metrics(result, fs::path(cfg.output_dir) / "metrics.csv");
    } catch (const Error&) {
    }
  }
  return result;
}

}  // namespace ednse
