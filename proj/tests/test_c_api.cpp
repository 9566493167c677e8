// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "ednse/ednse.h"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ednse_test_c_api_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("version and error state") {
  CHECK(std::string(ednse_version()) == "0.1.0");
  ednse_config* cfg = nullptr;
  CHECK(ednse_config_parse("scenario = energy_decay\nsolver.viscosity = -1\n", nullptr, &cfg) == EDNSE_PARSE_ERROR);
  CHECK(cfg == nullptr);
  const std::string msg = ednse_last_error();
  CHECK(msg.find("solver.viscosity") != std::string::npos);
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(ednse_config_parse(nullptr, nullptr, &cfg) == EDNSE_INVALID_ARGUMENT);
  CHECK(ednse_config_parse("scenario = energy_decay\n", "gronwall_twin", &cfg) == EDNSE_PARSE_ERROR);
  CHECK(ednse_config_parse("", "no_such_scenario", &cfg) == EDNSE_INVALID_ARGUMENT);
  CHECK(ednse_config_load("/nonexistent/ednse.cfg", nullptr, &cfg) == EDNSE_IO_ERROR);
  CHECK(ednse_set_threads(0) == EDNSE_INVALID_ARGUMENT);
  CHECK(ednse_set_threads(1) == EDNSE_OK);
}

TEST_CASE("config serialize reports the needed size") {
  ednse_config* cfg = nullptr;
  REQUIRE(ednse_config_parse("", "inequality_sweep", &cfg) == EDNSE_OK);
  REQUIRE(ednse_config_set_seed(cfg, 42) == EDNSE_OK);
  std::size_t needed = 0;
  CHECK(ednse_config_serialize(cfg, nullptr, 0, &needed) == EDNSE_OK);
  REQUIRE(needed > 0);
  std::string buf(needed + 1, '\0');
  CHECK(ednse_config_serialize(cfg, buf.data(), buf.size(), &needed) == EDNSE_OK);
  const std::string text(buf.c_str());
  CHECK(text.size() == needed);
  CHECK(text.find("scenario = inequality_sweep") != std::string::npos);
  CHECK(text.find("solver.seed = 42") != std::string::npos);

  std::size_t small = 0;
  char tiny[4];
  CHECK(ednse_config_serialize(cfg, tiny, sizeof tiny, &small) == EDNSE_OK);
  CHECK(small == needed);
  CHECK(std::string(tiny) == "sce");

  ednse_config* back = nullptr;
  REQUIRE(ednse_config_parse(text.c_str(), nullptr, &back) == EDNSE_OK);
  std::string again(needed + 1, '\0');
  CHECK(ednse_config_serialize(back, again.data(), again.size(), &needed) == EDNSE_OK);
  CHECK(again == buf);
  ednse_config_free(back);
  ednse_config_free(cfg);
  ednse_config_free(nullptr);
}

TEST_CASE("running a scenario through the C API") {
  const fs::path dir = scratch("run");
  ednse_config* cfg = nullptr;
  REQUIRE(ednse_config_parse("sweep.samples = 5000\nsweep.trials = 5\n", "inequality_sweep", &cfg) == EDNSE_OK);
  REQUIRE(ednse_config_set_output_dir(cfg, dir.string().c_str()) == EDNSE_OK);
  ednse_result* r = nullptr;
  REQUIRE(ednse_scenario_run(cfg, &r) == EDNSE_OK);
  CHECK(ednse_result_passed(r) == 1);
  CHECK(std::string(ednse_result_scenario(r)) == "inequality_sweep");
  CHECK(std::string(ednse_result_reason(r)).empty());
  bool found = false;
  for (std::size_t i = 0; i < ednse_result_metric_count(r); ++i) {
    const char* name = nullptr;
    double value = 0.0;
    REQUIRE(ednse_result_metric(r, i, &name, &value) == EDNSE_OK);
    if (std::string(name) == "lambda0[0.5,1]") {
      found = true;
      CHECK(value == doctest::Approx(1.2564312086261697).epsilon(1e-12));
    }
  }
  CHECK(found);
  const char* name = nullptr;
  double value = 0.0;
  CHECK(ednse_result_metric(r, ednse_result_metric_count(r), &name, &value) == EDNSE_INVALID_ARGUMENT);
  bool has_sweep = false;
  for (std::size_t i = 0; i < ednse_result_artifact_count(r); ++i)
    has_sweep = has_sweep || fs::path(ednse_result_artifact(r, i)).filename() == "sweep.csv";
  CHECK(has_sweep);
  CHECK(fs::exists(dir / "sweep.csv"));
  CHECK(ednse_result_artifact(r, 999) == nullptr);
  ednse_result_free(r);
  ednse_config_free(cfg);
}

TEST_CASE("a failing scenario is a result, not an error") {
  const fs::path dir = scratch("fail");
  ednse_config* cfg = nullptr;
  REQUIRE(ednse_config_parse("grid.n = 8\nsolver.dt_max = 0.05\nsolver.t_end = 0.5\n", "energy_decay", &cfg) ==
          EDNSE_OK);
  REQUIRE(ednse_config_set_output_dir(cfg, dir.string().c_str()) == EDNSE_OK);
  ednse_result* r = nullptr;
  REQUIRE(ednse_scenario_run(cfg, &r) == EDNSE_OK);
  CHECK(ednse_result_passed(r) == 0);
  CHECK(std::string(ednse_result_reason(r)).find("energy inequality") != std::string::npos);
  ednse_result_free(r);
  ednse_config_free(cfg);
}

TEST_CASE("fields and checkpoints") {
  const fs::path dir = scratch("field");
  ednse_field* tg = nullptr;
  REQUIRE(ednse_field_taylor_green(16, 2.0, &tg) == EDNSE_OK);
  double norm = 0.0;
  REQUIRE(ednse_field_l2_norm(tg, &norm) == EDNSE_OK);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));  // ||u||^2 = A^2 / 4

  const std::string path = (dir / "tg.ckpt").string();
  REQUIRE(ednse_field_write_checkpoint(tg, path.c_str()) == EDNSE_OK);
  ednse_field* back = nullptr;
  REQUIRE(ednse_field_read_checkpoint(path.c_str(), &back) == EDNSE_OK);
  double back_norm = 0.0;
  REQUIRE(ednse_field_l2_norm(back, &back_norm) == EDNSE_OK);
  CHECK(back_norm == norm);
  CHECK(ednse_field_read_checkpoint((dir / "missing.ckpt").string().c_str(), &back) == EDNSE_IO_ERROR);

  ednse_field* rnd = nullptr;
  REQUIRE(ednse_field_random(16, 2.0, 3.0, 7, 0.25, &rnd) == EDNSE_OK);
  REQUIRE(ednse_field_l2_norm(rnd, &norm) == EDNSE_OK);
  CHECK(norm == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(ednse_field_taylor_green(15, 1.0, &tg) == EDNSE_INVALID_ARGUMENT);
  CHECK(ednse_field_l2_norm(nullptr, &norm) == EDNSE_INVALID_ARGUMENT);

  ednse_field_free(rnd);
  ednse_field_free(back);
  ednse_field_free(tg);
}

TEST_CASE("constants") {
  double l = -1.0;
  CHECK(ednse_lambda0(1.0, 1.0, &l) == EDNSE_OK);
  CHECK(l == 0.0);
  CHECK(ednse_lambda0(0.5, 1.0, &l) == EDNSE_OK);
  CHECK(l == doctest::Approx(1.2564312086261697).epsilon(1e-13));
  CHECK(ednse_lambda0(-1.0, 1.0, &l) == EDNSE_INVALID_ARGUMENT);
  double m1 = 0.0, m4 = 0.0;
  CHECK(ednse_m_b(1.0, &m1) == EDNSE_OK);
  CHECK(ednse_m_b(4.0, &m4) == EDNSE_OK);
  CHECK(std::abs(m4 - 2.0 * m1) <= 1e-8);
  CHECK(ednse_m_b(0.0, &m1) == EDNSE_INVALID_ARGUMENT);
}
