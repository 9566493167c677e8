// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include "ednse/error.hpp"
#include "ednse/experiments.hpp"
#include "ednse/io.hpp"

namespace ednse {

namespace {

constexpr std::pair<Scenario, std::string_view> kScenarioNames[] = {
    {Scenario::energy_decay, "energy_decay"},
    {Scenario::gronwall_twin, "gronwall_twin"},
    {Scenario::shifted_continuity, "shifted_continuity"},
    {Scenario::galerkin_convergence, "galerkin_convergence"},
    {Scenario::frequency_split, "frequency_split"},
    {Scenario::damping_compare, "damping_compare"},
    {Scenario::inequality_sweep, "inequality_sweep"},
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

struct Ctx {
  const std::string& key;
  const std::string& value;
  int line;

  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(key, line, what); }

  double real() const {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0' || errno == ERANGE) fail("expected a number, got '" + value + "'");
    return v;
  }
  long integer() const {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (value.empty() || *end != '\0' || errno == ERANGE) fail("expected an integer, got '" + value + "'");
    return v;
  }
  std::uint64_t unsigned_integer() const {
    if (!value.empty() && value[0] == '-') fail("expected a non-negative integer");
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (value.empty() || *end != '\0' || errno == ERANGE) fail("expected an integer, got '" + value + "'");
    return v;
  }
  bool boolean() const {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    fail("expected true or false, got '" + value + "'");
  }
  template <class T, class F>
  std::vector<T> list(F element) const {
    std::vector<T> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string v = trim(item);
      Ctx sub{key, v, line};
      out.push_back(element(sub));
    }
    if (out.empty()) fail("expected a non-empty comma-separated list");
    return out;
  }
};

struct KeySpec {
  std::string name;
  std::function<void(RunConfig&, const Ctx&)> set;
  std::function<std::string(const RunConfig&)> get;
};

std::string fmt(double v) { return io::format_double(v); }
std::string fmt_bool(bool b) { return b ? "true" : "false"; }

template <class T>
std::string fmt_list(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += fmt(v[i]);
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

std::string damping_kind_name(DampingKind k) {
  switch (k) {
    case DampingKind::exponential: return "exponential";
    case DampingKind::polynomial: return "polynomial";
    case DampingKind::none: return "none";
  }
  return "none";
}

std::string initial_kind_name(InitialCondition::Kind k) {
  switch (k) {
    case InitialCondition::Kind::taylor_green: return "taylor_green";
    case InitialCondition::Kind::random: return "random";
    case InitialCondition::Kind::checkpoint: return "checkpoint";
  }
  return "taylor_green";
}

const std::vector<KeySpec>& key_table() {
  using K = KeySpec;
  static const std::vector<KeySpec> table = {
      K{"scenario",
        [](RunConfig& c, const Ctx& x) {
          auto s = scenario_from_name(x.value);
          if (!s) x.fail("unknown scenario '" + x.value + "'");
          c.scenario = *s;
        },
        [](const RunConfig& c) { return std::string(scenario_name(c.scenario)); }},
      K{"output_dir", [](RunConfig& c, const Ctx& x) { c.output_dir = x.value; },
        [](const RunConfig& c) { return c.output_dir; }},

      K{"grid.n", [](RunConfig& c, const Ctx& x) { c.solver.grid.n = static_cast<int>(x.integer()); },
        [](const RunConfig& c) { return std::to_string(c.solver.grid.n); }},
      K{"grid.box_length", [](RunConfig& c, const Ctx& x) { c.solver.grid.box_length = x.real(); },
        [](const RunConfig& c) { return fmt(c.solver.grid.box_length); }},
      K{"grid.dealias_fraction", [](RunConfig& c, const Ctx& x) { c.solver.grid.dealias_fraction = x.real(); },
        [](const RunConfig& c) { return fmt(c.solver.grid.dealias_fraction); }},

      K{"damping.kind",
        [](RunConfig& c, const Ctx& x) {
          if (x.value == "exponential") c.solver.damping.kind = DampingKind::exponential;
          else if (x.value == "polynomial") c.solver.damping.kind = DampingKind::polynomial;
          else if (x.value == "none") c.solver.damping.kind = DampingKind::none;
          else x.fail("expected exponential, polynomial or none");
        },
        [](const RunConfig& c) { return damping_kind_name(c.solver.damping.kind); }},
      K{"damping.a", [](RunConfig& c, const Ctx& x) { c.solver.damping.a = x.real(); },
        [](const RunConfig& c) { return fmt(c.solver.damping.a); }},
      K{"damping.b", [](RunConfig& c, const Ctx& x) { c.solver.damping.b = x.real(); },
        [](const RunConfig& c) { return fmt(c.solver.damping.b); }},
      K{"damping.beta", [](RunConfig& c, const Ctx& x) { c.solver.damping.beta = x.real(); },
        [](const RunConfig& c) { return fmt(c.solver.damping.beta); }},

      K{"solver.cutoff_R",
        [](RunConfig& c, const Ctx& x) {
          if (x.value == "default") c.solver.cutoff_R.reset();
          else c.solver.cutoff_R = x.real();
        },
        [](const RunConfig& c) { return c.solver.cutoff_R ? fmt(*c.solver.cutoff_R) : std::string("default"); }},
      K{"solver.viscosity", [](RunConfig& c, const Ctx& x) { c.solver.viscosity = x.real(); },
        [](const RunConfig& c) { return fmt(c.solver.viscosity); }},
      K{"solver.advection", [](RunConfig& c, const Ctx& x) { c.solver.advection = x.boolean(); },
        [](const RunConfig& c) { return fmt_bool(c.solver.advection); }},
      K{"solver.dt_policy",
        [](RunConfig& c, const Ctx& x) {
          if (x.value == "fixed") c.solver.dt_policy = DtPolicy::fixed;
          else if (x.value == "cfl") c.solver.dt_policy = DtPolicy::cfl;
          else x.fail("expected fixed or cfl");
        },
        [](const RunConfig& c) { return std::string(c.solver.dt_policy == DtPolicy::fixed ? "fixed" : "cfl"); }},
      K{"solver.dt", [](RunConfig& c, const Ctx& x) { c.solver.dt = x.real(); },
        [](const RunConfig& c) { return fmt(c.solver.dt); }},
      K{"solver.cfl_safety", [](RunConfig& c, const Ctx& x) { c.solver.cfl_safety = x.real(); },
        [](const RunConfig& c) { return fmt(c.solver.cfl_safety); }},
      K{"solver.dt_max", [](RunConfig& c, const Ctx& x) { c.solver.dt_max = x.real(); },
        [](const RunConfig& c) { return fmt(c.solver.dt_max); }},
      K{"solver.t_end", [](RunConfig& c, const Ctx& x) { c.solver.t_end = x.real(); },
        [](const RunConfig& c) { return fmt(c.solver.t_end); }},
      K{"solver.output_every", [](RunConfig& c, const Ctx& x) { c.solver.output_every = static_cast<int>(x.integer()); },
        [](const RunConfig& c) { return std::to_string(c.solver.output_every); }},
      K{"solver.seed", [](RunConfig& c, const Ctx& x) { c.solver.seed = x.unsigned_integer(); },
        [](const RunConfig& c) { return std::to_string(c.solver.seed); }},

      K{"initial.kind",
        [](RunConfig& c, const Ctx& x) {
          using IK = InitialCondition::Kind;
          if (x.value == "taylor_green") c.initial.kind = IK::taylor_green;
          else if (x.value == "random") c.initial.kind = IK::random;
          else if (x.value == "checkpoint") c.initial.kind = IK::checkpoint;
          else x.fail("expected taylor_green, random or checkpoint");
        },
        [](const RunConfig& c) { return initial_kind_name(c.initial.kind); }},
      K{"initial.amplitude", [](RunConfig& c, const Ctx& x) { c.initial.amplitude = x.real(); },
        [](const RunConfig& c) { return fmt(c.initial.amplitude); }},
      K{"initial.slope", [](RunConfig& c, const Ctx& x) { c.initial.slope = x.real(); },
        [](const RunConfig& c) { return fmt(c.initial.slope); }},
      K{"initial.k_peak", [](RunConfig& c, const Ctx& x) { c.initial.k_peak = x.real(); },
        [](const RunConfig& c) { return fmt(c.initial.k_peak); }},
      K{"initial.norm", [](RunConfig& c, const Ctx& x) { c.initial.norm = x.real(); },
        [](const RunConfig& c) { return fmt(c.initial.norm); }},
      K{"initial.path", [](RunConfig& c, const Ctx& x) { c.initial.path = x.value; },
        [](const RunConfig& c) { return c.initial.path; }},

      K{"output.checkpoint", [](RunConfig& c, const Ctx& x) { c.write_checkpoint = x.boolean(); },
        [](const RunConfig& c) { return fmt_bool(c.write_checkpoint); }},

      K{"twin.perturbation", [](RunConfig& c, const Ctx& x) { c.twin_perturbation = x.real(); },
        [](const RunConfig& c) { return fmt(c.twin_perturbation); }},
      K{"shift.steps", [](RunConfig& c, const Ctx& x) { c.shift_steps = static_cast<int>(x.integer()); },
        [](const RunConfig& c) { return std::to_string(c.shift_steps); }},
      K{"split.deltas", [](RunConfig& c, const Ctx& x) { c.split_deltas = x.list<double>([](const Ctx& e) { return e.real(); }); },
        [](const RunConfig& c) { return fmt_list(c.split_deltas); }},
      K{"split.refine", [](RunConfig& c, const Ctx& x) { c.split_refine = x.boolean(); },
        [](const RunConfig& c) { return fmt_bool(c.split_refine); }},
      K{"galerkin.resolutions",
        [](RunConfig& c, const Ctx& x) {
          c.resolutions = x.list<int>([](const Ctx& e) { return static_cast<int>(e.integer()); });
        },
        [](const RunConfig& c) { return fmt_list(c.resolutions); }},
      K{"equicontinuity.s0", [](RunConfig& c, const Ctx& x) { c.equicontinuity_s0 = x.real(); },
        [](const RunConfig& c) { return fmt(c.equicontinuity_s0); }},
      K{"equicontinuity.interval", [](RunConfig& c, const Ctx& x) { c.equicontinuity_interval = x.real(); },
        [](const RunConfig& c) { return fmt(c.equicontinuity_interval); }},
      K{"equicontinuity.edges", [](RunConfig& c, const Ctx& x) { c.gap_edges = x.list<double>([](const Ctx& e) { return e.real(); }); },
        [](const RunConfig& c) { return fmt_list(c.gap_edges); }},
      K{"decay.epsilons", [](RunConfig& c, const Ctx& x) { c.decay_epsilons = x.list<double>([](const Ctx& e) { return e.real(); }); },
        [](const RunConfig& c) { return fmt_list(c.decay_epsilons); }},
      K{"sweep.samples", [](RunConfig& c, const Ctx& x) { c.sweep_samples = x.integer(); },
        [](const RunConfig& c) { return std::to_string(c.sweep_samples); }},
      K{"sweep.b_values", [](RunConfig& c, const Ctx& x) { c.sweep_b = x.list<double>([](const Ctx& e) { return e.real(); }); },
        [](const RunConfig& c) { return fmt_list(c.sweep_b); }},
      K{"sweep.beta_values", [](RunConfig& c, const Ctx& x) { c.sweep_beta = x.list<double>([](const Ctx& e) { return e.real(); }); },
        [](const RunConfig& c) { return fmt_list(c.sweep_beta); }},
      K{"sweep.radius", [](RunConfig& c, const Ctx& x) { c.sweep_radius = x.real(); },
        [](const RunConfig& c) { return fmt(c.sweep_radius); }},
      K{"sweep.trials", [](RunConfig& c, const Ctx& x) { c.sweep_trials = static_cast<int>(x.integer()); },
        [](const RunConfig& c) { return std::to_string(c.sweep_trials); }},
  };
  return table;
}

class Validator {
 public:
  explicit Validator(const std::map<std::string, int>& lines) : lines_(lines) {}

  void require(bool ok, const std::string& key, const std::string& what) const {
    if (ok) return;
    const auto it = lines_.find(key);
    throw ConfigError(key, it == lines_.end() ? 0 : it->second, what);
  }

 private:
  const std::map<std::string, int>& lines_;
};

void validate(const RunConfig& c, const std::map<std::string, int>& lines) {
  const Validator v(lines);
  const SolverConfig& s = c.solver;
  v.require(s.grid.n > 0 && s.grid.n % 2 == 0, "grid.n", "must be a positive even integer");
  v.require(s.grid.box_length > 0.0 && std::isfinite(s.grid.box_length), "grid.box_length", "must be positive");
  v.require(s.grid.dealias_fraction > 0.0 && s.grid.dealias_fraction <= 1.0, "grid.dealias_fraction",
            "must lie in (0, 1]");
  if (s.damping.kind == DampingKind::exponential || s.damping.kind == DampingKind::polynomial) {
    v.require(s.damping.a > 0.0, "damping.a", "must be positive");
  }
  if (s.damping.kind == DampingKind::exponential) v.require(s.damping.b > 0.0, "damping.b", "must be positive");
  if (s.damping.kind == DampingKind::polynomial) v.require(s.damping.beta > 0.0, "damping.beta", "must be positive");
  if (s.cutoff_R) {
    v.require(*s.cutoff_R >= 0.0 && *s.cutoff_R <= s.grid.max_wavenumber(), "solver.cutoff_R",
              "must lie in [0, max lattice |k|]");
  }
  v.require(s.viscosity > 0.0, "solver.viscosity", "must be positive");
  v.require(s.dt > 0.0, "solver.dt", "must be positive");
  v.require(s.cfl_safety > 0.0, "solver.cfl_safety", "must be positive");
  v.require(s.dt_max > 0.0, "solver.dt_max", "must be positive");
  v.require(s.t_end > 0.0, "solver.t_end", "must be positive");
  v.require(s.output_every >= 1, "solver.output_every", "must be at least 1");

  const InitialCondition& ic = c.initial;
  v.require(std::isfinite(ic.amplitude), "initial.amplitude", "must be finite");
  v.require(ic.k_peak > 0.0, "initial.k_peak", "must be positive");
  v.require(ic.norm >= 0.0, "initial.norm", "must be non-negative");
  v.require(std::isfinite(ic.slope), "initial.slope", "must be finite");
  if (ic.kind == InitialCondition::Kind::checkpoint) v.require(!ic.path.empty(), "initial.path", "required for checkpoint initial data");

  v.require(c.twin_perturbation >= 0.0, "twin.perturbation", "must be non-negative");
  v.require(c.shift_steps >= 0, "shift.steps", "must be non-negative");
  for (double d : c.split_deltas) v.require(d > 0.0, "split.deltas", "every delta must be positive");
  for (int n : c.resolutions) v.require(n > 0 && n % 2 == 0, "galerkin.resolutions", "entries must be positive even integers");
  v.require(c.equicontinuity_s0 > 0.0, "equicontinuity.s0", "must be positive");
  v.require(c.equicontinuity_interval > 0.0, "equicontinuity.interval", "must be positive");
  v.require(c.gap_edges.size() >= 2 && std::is_sorted(c.gap_edges.begin(), c.gap_edges.end()) &&
                std::adjacent_find(c.gap_edges.begin(), c.gap_edges.end()) == c.gap_edges.end() &&
                c.gap_edges.front() >= 0.0,
            "equicontinuity.edges", "need at least two strictly increasing non-negative edges");
  for (double e : c.decay_epsilons) v.require(e > 0.0 && e <= 1.0, "decay.epsilons", "entries must lie in (0, 1]");
  v.require(c.sweep_samples >= 1, "sweep.samples", "must be at least 1");
  for (double b : c.sweep_b) v.require(b > 0.0, "sweep.b_values", "entries must be positive");
  for (double b : c.sweep_beta) v.require(b > 0.0, "sweep.beta_values", "entries must be positive");
  v.require(c.sweep_radius > 0.0, "sweep.radius", "must be positive");
  v.require(c.sweep_trials >= 1, "sweep.trials", "must be at least 1");

  switch (c.scenario) {
    case Scenario::gronwall_twin:
    case Scenario::shifted_continuity:
      v.require(s.damping.kind == DampingKind::exponential, "damping.kind",
                "the Gronwall scenarios need exponential damping");
      if (c.scenario == Scenario::shifted_continuity) {
        v.require(s.dt_policy == DtPolicy::fixed, "solver.dt_policy", "shifted_continuity needs a fixed step");
      }
      break;
    case Scenario::frequency_split:
      v.require(c.split_deltas.size() >= 3, "split.deltas", "need at least three values");
      if (c.split_refine) {
        v.require(s.dt_policy == DtPolicy::fixed, "solver.dt_policy", "dt refinement needs a fixed step");
      }
      break;
    case Scenario::galerkin_convergence:
      v.require(c.resolutions.size() >= 2, "galerkin.resolutions", "need at least two resolutions");
      break;
    case Scenario::damping_compare:
      v.require(s.damping.kind != DampingKind::none, "damping.kind", "damping_compare needs a damped run");
      break;
    default:
      break;
  }
}

}  // namespace

std::string_view scenario_name(Scenario s) {
  for (const auto& [value, name] : kScenarioNames)
    if (value == s) return name;
  return "unknown";
}

std::optional<Scenario> scenario_from_name(std::string_view name) {
  for (const auto& [value, n] : kScenarioNames)
    if (n == name) return value;
  return std::nullopt;
}

RunConfig parse_config(std::string_view text, std::optional<Scenario> fallback) {
  RunConfig cfg;
  std::map<std::string, int> lines;
  const auto& table = key_table();
  std::stringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("", lineno, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const auto spec = std::find_if(table.begin(), table.end(), [&](const KeySpec& k) { return k.name == key; });
    if (spec == table.end()) throw ConfigError(key, lineno, "unknown key");
    if (lines.count(key)) throw ConfigError(key, lineno, "duplicate key (first set on line " + std::to_string(lines[key]) + ")");
    lines[key] = lineno;
    spec->set(cfg, Ctx{key, value, lineno});
  }
  if (!lines.count("scenario")) {
    if (!fallback) throw ConfigError("scenario", 0, "missing required key");
    cfg.scenario = *fallback;
  } else if (fallback && *fallback != cfg.scenario) {
    throw ConfigError("scenario", lines["scenario"],
                      "config names '" + std::string(scenario_name(cfg.scenario)) + "' but '" +
                          std::string(scenario_name(*fallback)) + "' was requested");
  }
  validate(cfg, lines);
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& spec : key_table()) out += spec.name + " = " + spec.get(cfg) + "\n";
  return out;
}

}  // namespace ednse
