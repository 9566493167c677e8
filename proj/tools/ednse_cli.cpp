// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "ednse/ednse.h"

namespace {

constexpr const char* kScenarios[] = {
    "energy_decay",    "gronwall_twin",   "shifted_continuity", "galerkin_convergence",
    "frequency_split", "damping_compare", "inequality_sweep",
};

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int report_error(const char* what, ednse_status status) {
  std::fprintf(stderr, "ednse: %s failed (status %d): %s\n", what, static_cast<int>(status), ednse_last_error());
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Damped Navier-Stokes scenario runner"};
  app.require_subcommand(1);
  std::string config_path;
  std::string output_dir;
  int threads = 1;
  std::uint64_t seed = 0;
  bool quiet = false;

  for (const char* name : kScenarios) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " scenario");
    sub->add_option("--config", config_path, "config file (flat section.key = value)")->check(CLI::ExistingFile);
    sub->add_option("--output", output_dir, "output directory (overrides output_dir)");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "random seed (overrides solver.seed)");
    sub->add_flag("--quiet", quiet, "print only the verdict line");
  }
  CLI11_PARSE(app, argc, argv);

  const std::string scenario = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();

  if (ednse_status st = ednse_set_threads(threads); st != EDNSE_OK) return report_error("set threads", st);

  ednse_config* cfg = nullptr;
  ednse_status st = config_path.empty() ? ednse_config_parse("", scenario.c_str(), &cfg)
                                        : ednse_config_load(config_path.c_str(), scenario.c_str(), &cfg);
  if (st != EDNSE_OK) return report_error("config", st);
  if (sub->count("--seed") && (st = ednse_config_set_seed(cfg, seed)) != EDNSE_OK) {
    ednse_config_free(cfg);
    return report_error("seed", st);
  }
  if (!output_dir.empty() && (st = ednse_config_set_output_dir(cfg, output_dir.c_str())) != EDNSE_OK) {
    ednse_config_free(cfg);
    return report_error("output", st);
  }

  ednse_result* result = nullptr;
  st = ednse_scenario_run(cfg, &result);
  ednse_config_free(cfg);
  if (st != EDNSE_OK) return report_error("scenario", st);

  const bool pass = ednse_result_passed(result) != 0;
  if (!quiet) {
    for (size_t i = 0; i < ednse_result_metric_count(result); ++i) {
      const char* name = nullptr;
      double value = 0.0;
      if (ednse_result_metric(result, i, &name, &value) == EDNSE_OK) std::printf("  %s = %.17g\n", name, value);
    }
    for (size_t i = 0; i < ednse_result_artifact_count(result); ++i)
      std::printf("  wrote %s\n", ednse_result_artifact(result, i));
  }
  std::printf("%s: %s", ednse_result_scenario(result), pass ? "PASS" : "FAIL");
  if (!pass && *ednse_result_reason(result)) std::printf(" (%s)", ednse_result_reason(result));
  std::printf("\n");
  ednse_result_free(result);
  return pass ? 0 : kExitFail;
}
