// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDNSE_EXPERIMENTS_HPP
#define EDNSE_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ednse/solver_config.hpp"

namespace ednse {

enum class Scenario {
  energy_decay,
  gronwall_twin,
  shifted_continuity,
  galerkin_convergence,
  frequency_split,
  damping_compare,
  inequality_sweep,
};

std::string_view scenario_name(Scenario s);
std::optional<Scenario> scenario_from_name(std::string_view name);

struct InitialCondition {
  enum class Kind { taylor_green, random, checkpoint };
  Kind kind = Kind::taylor_green;
  double amplitude = 1.0;
  double slope = 2.0;
  double k_peak = 3.0;
  double norm = 0.5;
  std::string path;

  bool operator==(const InitialCondition&) const = default;
};

/// Pass thresholds shared by the scenarios and the acceptance suite.
namespace thresholds {
inline constexpr double kGronwallMargin = 1.0 + 1e-3;
inline constexpr double kParsevalSplit = 1e-12;
inline constexpr double kBernstein = -1e-12;
inline constexpr double kMonotonicity = -1e-12;
inline constexpr double kLambdaRootResidual = 1e-12;
inline constexpr double kMbScaling = 1e-8;
inline constexpr double kMbInequality = 1e-10;
inline constexpr double kContraction = 1e-12;
inline constexpr double kEquicontinuityFactor = 1.5;
inline constexpr std::size_t kEquicontinuityMinPairs = 10;
/// Observed reduction of the Duhamel reconstruction error under dt halving:
/// between a halving and a quartering, with 10% allowance on either end.
inline constexpr double kReconRatioLow = 2.0 * 0.9;
inline constexpr double kReconRatioHigh = 4.0 * 1.1;
}  // namespace thresholds

struct RunConfig {
  Scenario scenario = Scenario::energy_decay;
  SolverConfig solver;
  InitialCondition initial;
  std::string output_dir = "out";
  bool write_checkpoint = false;

  double twin_perturbation = 1e-6;
  int shift_steps = 2;
  std::vector<double> split_deltas{1.5, 2.5, 3.5};
  bool split_refine = true;
  std::vector<int> resolutions{16, 32};
  double equicontinuity_s0 = 3.0;
  /// Trajectory sampling interval in time for the modulus tables.
  double equicontinuity_interval = 0.01;
  std::vector<double> gap_edges{0.0, 0.05, 0.1, 0.2, 0.4, 0.8};
  std::vector<double> decay_epsilons{0.5, 0.1, 0.01};
  long sweep_samples = 1000000;
  std::vector<double> sweep_b{0.5, 1.0, 2.0};
  std::vector<double> sweep_beta{1.0, 2.0, 3.0};
  double sweep_radius = 3.0;
  int sweep_trials = 100;

  bool operator==(const RunConfig&) const = default;
};

/// Parses the flat `section.key = value` format ('#' starts a comment).
/// `scenario` is required unless `fallback` supplies it; a conflicting value
/// is an error. Unknown keys, duplicates and out-of-range values raise
/// ConfigError with the key name and line number.
RunConfig parse_config(std::string_view text, std::optional<Scenario> fallback = std::nullopt);

/// Every key, in a fixed order, numbers with 17 significant digits.
std::string serialize_config(const RunConfig& cfg);

struct ScenarioResult {
  std::string scenario;
  bool pass = false;
  std::string reason;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> artifacts;

  /// Throws InvalidArgument for an unknown name.
  double metric(std::string_view name) const;
  bool has_metric(std::string_view name) const;
};

/// Runs the configured scenario, writes its CSV files and metrics.csv under
/// output_dir, and evaluates the pass thresholds. Library errors (blow-up,
/// energy violation, I/O) are captured as pass = false with a reason.
ScenarioResult run_scenario(const RunConfig& cfg);

/// The initial field a config describes (Taylor-Green, random or checkpoint).
SpectralVectorField make_initial_field(const RunConfig& cfg, const GridSpec& grid);

}  // namespace ednse

#endif  // EDNSE_EXPERIMENTS_HPP
