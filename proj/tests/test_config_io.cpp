// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "ednse/error.hpp"
#include "ednse/experiments.hpp"
#include "ednse/io.hpp"
#include "ednse/spectral.hpp"

using namespace ednse;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ednse_test_config_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <class F>
ConfigError config_error(F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("no ConfigError raised");
  return ConfigError("", 0, "");
}

}  // namespace

TEST_CASE("minimal config takes the documented defaults") {
  const RunConfig c = parse_config("scenario = energy_decay\n");
  CHECK(c.scenario == Scenario::energy_decay);
  CHECK(c.solver.viscosity == 1.0);
  CHECK(c.solver.grid.dealias_fraction == doctest::Approx(2.0 / 3.0));
  CHECK(c.solver.grid.n == 32);
  CHECK(c.solver.damping.kind == DampingKind::exponential);
  CHECK(c.solver.damping.a == 1.0);
  CHECK(c.solver.damping.b == 1.0);
  CHECK_FALSE(c.solver.cutoff_R.has_value());
}

TEST_CASE("config values, comments and lists") {
  const RunConfig c = parse_config(
      "# header\n"
      "scenario = frequency_split   # trailing\n"
      "\n"
      "grid.n = 16\n"
      "damping.kind = polynomial\n"
      "damping.beta = 2.5\n"
      "solver.cutoff_R = 4\n"
      "solver.dt_policy = fixed\n"
      "solver.advection = false\n"
      "split.deltas = 1.5, 2.5 ,3.5,4\n"
      "initial.kind = random\n");
  CHECK(c.solver.grid.n == 16);
  CHECK(c.solver.damping.kind == DampingKind::polynomial);
  CHECK(c.solver.damping.beta == 2.5);
  CHECK(*c.solver.cutoff_R == 4.0);
  CHECK_FALSE(c.solver.advection);
  CHECK(c.split_deltas == std::vector<double>{1.5, 2.5, 3.5, 4.0});
  CHECK(c.initial.kind == InitialCondition::Kind::random);
}

TEST_CASE("config errors name the key and line") {
  auto e = config_error([] { parse_config("scenario = energy_decay\nsolver.viscosity = -1\n"); });
  CHECK(e.key() == "solver.viscosity");
  CHECK(e.line() == 2);
  CHECK(std::string(e.what()).find("solver.viscosity") != std::string::npos);

  e = config_error([] { parse_config("scenario = energy_decay\nsolver.viscosty = 1\n"); });
  CHECK(e.key() == "solver.viscosty");
  CHECK(e.line() == 2);

  e = config_error([] { parse_config("scenario = warp_drive\n"); });
  CHECK(e.key() == "scenario");
  CHECK(e.line() == 1);

  e = config_error([] { parse_config("grid.n = 16\n"); });
  CHECK(e.key() == "scenario");

  e = config_error([] { parse_config("scenario = energy_decay\ngrid.n = 16\ngrid.n = 8\n"); });
  CHECK(e.line() == 3);

  e = config_error([] { parse_config("scenario = energy_decay\ngrid.n = 15\n"); });
  CHECK(e.key() == "grid.n");

  e = config_error([] { parse_config("scenario = energy_decay\ngrid.n = sixteen\n"); });
  CHECK(e.key() == "grid.n");

  e = config_error([] { parse_config("scenario = energy_decay\n\njust words\n"); });
  CHECK(e.line() == 3);

  e = config_error([] { parse_config("scenario = shifted_continuity\n"); });
  CHECK(e.key() == "solver.dt_policy");

  e = config_error([] { parse_config("scenario = gronwall_twin\n", Scenario::energy_decay); });
  CHECK(e.key() == "scenario");
  CHECK(parse_config("", Scenario::inequality_sweep).scenario == Scenario::inequality_sweep);
}

TEST_CASE("serialize then parse is the identity") {
  RunConfig c = parse_config(
      "scenario = galerkin_convergence\n"
      "grid.box_length = 6.1\n"
      "solver.cutoff_R = 3.3333333333333335\n"
      "solver.t_end = 0.7\n"
      "solver.seed = 18446744073709551615\n"
      "galerkin.resolutions = 8, 16, 24\n"
      "equicontinuity.edges = 0, 0.1, 0.30000000000000004\n"
      "initial.path = /tmp/some where.ckpt\n");
  const std::string text = serialize_config(c);
  const RunConfig back = parse_config(text);
  CHECK(back == c);
  CHECK(serialize_config(back) == text);
}

TEST_CASE("CSV writer and reader") {
  const fs::path dir = scratch("csv");
  io::write_csv({}, io::CsvSchema::decay, dir / "empty.csv");
  CHECK(slurp(dir / "empty.csv") == "epsilon,t_cross\n");

  std::vector<io::CsvRow> rows;
  for (int i = 0; i < 50; ++i) {
    const double x = std::sqrt(2.0) * i / 7.0;
    rows.push_back({x, std::exp(-x), 1.0 / 3.0 + x, 1e-300 * x, -x, std::nextafter(x, 1e9)});
  }
  io::write_csv(rows, io::CsvSchema::ledger, dir / "ledger.csv");
  CHECK(slurp(dir / "ledger.csv").rfind("t,l2_sq,grad_integral,damp_integral,budget,slack\n", 0) == 0);
  CHECK(io::read_csv(dir / "ledger.csv", io::CsvSchema::ledger) == rows);
  CHECK_THROWS_AS(io::read_csv(dir / "ledger.csv", io::CsvSchema::gronwall), IoError);
  CHECK_THROWS_AS(io::read_csv(dir / "missing.csv", io::CsvSchema::ledger), IoError);
  CHECK_THROWS_AS(io::write_csv({{1.0}}, io::CsvSchema::decay, dir / "bad.csv"), InvalidArgument);

  CHECK(io::csv_header(io::CsvSchema::gronwall) ==
        std::vector<std::string>{"t", "w_norm_sq", "bound_lambda0t", "bound_2lambda0t", "margin"});
  CHECK(io::csv_header(io::CsvSchema::split) ==
        std::vector<std::string>{"delta", "t", "v_norm", "w_norm", "f1", "f2", "f3", "f4", "recon_error"});
}

TEST_CASE("checkpoint round trip is bitwise") {
  const fs::path dir = scratch("ckpt");
  GridSpec g;
  g.n = 8;
  g.box_length = 3.0;
  SimState s{1.25, 17, random_divfree_field(g, 1.0, 2.0, 4, 0.3)};
  io::write_checkpoint(dir / "a.ckpt", s);
  const SimState back = io::read_checkpoint(dir / "a.ckpt");
  CHECK(back.t == s.t);
  CHECK(back.step == s.step);
  CHECK(back.u == s.u);
  CHECK(fs::file_size(dir / "a.ckpt") == 6 + 8 * 4 + 3 * 512 * 16);

  fs::resize_file(dir / "a.ckpt", fs::file_size(dir / "a.ckpt") - 1);
  CHECK_THROWS_AS(io::read_checkpoint(dir / "a.ckpt"), IoError);
  {
    std::ofstream out(dir / "b.ckpt", std::ios::binary);
    out << "NOTACHECKPOINT";
  }
  CHECK_THROWS_AS(io::read_checkpoint(dir / "b.ckpt"), IoError);
}

TEST_CASE("energy_decay on zero data passes with zero metrics") {
  const fs::path dir = scratch("zero");
  RunConfig c = parse_config(
      "scenario = energy_decay\ngrid.n = 8\nsolver.t_end = 0.01\ninitial.kind = random\ninitial.norm = 0\n");
  c.output_dir = dir.string();
  const ScenarioResult r = run_scenario(c);
  CHECK(r.pass);
  CHECK(r.metric("initial_l2_sq") == 0.0);
  CHECK(r.metric("min_slack") == 0.0);
  CHECK(r.metric("max_step_growth") == 0.0);
  CHECK(r.metric("t_cross[0.01]") == 0.0);
  CHECK(fs::exists(dir / "ledger.csv"));
  CHECK(fs::exists(dir / "metrics.csv"));
  CHECK_THROWS_AS(r.metric("no_such_metric"), InvalidArgument);
}

TEST_CASE("scenario failures are reported, not thrown") {
  const fs::path dir = scratch("fail");
  RunConfig c = parse_config("scenario = energy_decay\ngrid.n = 8\ninitial.kind = checkpoint\ninitial.path = " +
                             (dir / "absent.ckpt").string() + "\n");
  c.output_dir = dir.string();
  const ScenarioResult r = run_scenario(c);
  CHECK_FALSE(r.pass);
  CHECK(r.reason.find("absent.ckpt") != std::string::npos);

  RunConfig coarse = parse_config("scenario = energy_decay\ngrid.n = 8\nsolver.dt_max = 0.05\nsolver.t_end = 0.5\n");
  coarse.output_dir = (dir / "coarse").string();
  const ScenarioResult v = run_scenario(coarse);
  CHECK_FALSE(v.pass);
  CHECK(v.reason.find("energy inequality") != std::string::npos);
}

TEST_CASE("checkpoint initial data resumes a saved field") {
  const fs::path dir = scratch("resume");
  RunConfig c = parse_config("scenario = energy_decay\ngrid.n = 8\nsolver.t_end = 0.01\noutput.checkpoint = true\n");
  c.output_dir = (dir / "first").string();
  REQUIRE(run_scenario(c).pass);
  RunConfig again = c;
  again.initial.kind = InitialCondition::Kind::checkpoint;
  again.initial.path = (dir / "first" / "final.ckpt").string();
  const SpectralVectorField u = make_initial_field(again, c.solver.grid);
  CHECK(u == io::read_checkpoint(again.initial.path).u);
  GridSpec other = c.solver.grid;
  other.n = 16;
  CHECK_THROWS_AS(make_initial_field(again, other), InvalidArgument);
}

TEST_CASE("inequality sweep scenario") {
  const fs::path dir = scratch("sweep");
  RunConfig c = parse_config("scenario = inequality_sweep\nsweep.samples = 20000\nsweep.trials = 20\n");
  c.output_dir = dir.string();
  const ScenarioResult r = run_scenario(c);
  CHECK(r.pass);
  CHECK(r.metric("monotonicity_violations") == 0.0);
  CHECK(r.metric("lambda0[1,1]") == 0.0);
  const std::string csv = slurp(dir / "sweep.csv");
  CHECK(csv.rfind("check,parameter,samples,violations,min_scaled_residual\n", 0) == 0);
}
