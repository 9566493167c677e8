// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include "ednse/ednse.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "ednse/damping.hpp"
#include "ednse/error.hpp"
#include "ednse/experiments.hpp"
#include "ednse/io.hpp"
#include "ednse/spectral.hpp"

struct ednse_config {
  ednse::RunConfig cfg;
};

struct ednse_result {
  ednse::ScenarioResult result;
};

struct ednse_field {
  ednse::SimState state;
};

namespace {

thread_local std::string g_last_error;

template <class F>
ednse_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return EDNSE_OK;
  } catch (const ednse::ConfigError& e) {
    g_last_error = e.what();
    return EDNSE_PARSE_ERROR;
  } catch (const ednse::InvalidArgument& e) {
    g_last_error = e.what();
    return EDNSE_INVALID_ARGUMENT;
  } catch (const ednse::IoError& e) {
    g_last_error = e.what();
    return EDNSE_IO_ERROR;
  } catch (const ednse::BlowUpError& e) {
    g_last_error = e.what();
    return EDNSE_NUMERIC_ERROR;
  } catch (const ednse::EnergyViolation& e) {
    g_last_error = e.what();
    return EDNSE_ENERGY_VIOLATION;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return EDNSE_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return EDNSE_INTERNAL_ERROR;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw ednse::InvalidArgument(what);
}

std::optional<ednse::Scenario> scenario_arg(const char* name) {
  if (!name) return std::nullopt;
  auto s = ednse::scenario_from_name(name);
  if (!s) throw ednse::InvalidArgument(std::string("unknown scenario '") + name + "'");
  return s;
}

ednse::GridSpec grid_of(int n) {
  ednse::GridSpec g;
  g.n = n;
  g.validate();
  return g;
}

}  // namespace

extern "C" {

const char* ednse_version(void) { return "0.1.0"; }

const char* ednse_last_error(void) { return g_last_error.c_str(); }

ednse_status ednse_set_threads(int threads) {
  return guarded([&] {
    require(threads >= 1, "threads must be at least 1");
    ednse::set_thread_count(threads);
  });
}

ednse_status ednse_config_parse(const char* text, const char* scenario, ednse_config** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new ednse_config{ednse::parse_config(text, scenario_arg(scenario))};
  });
}

ednse_status ednse_config_load(const char* path, const char* scenario, ednse_config** out) {
  return guarded([&] {
    require(path && out, "null argument");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ednse::IoError(std::string("cannot open config '") + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    *out = new ednse_config{ednse::parse_config(ss.str(), scenario_arg(scenario))};
  });
}

ednse_status ednse_config_set_seed(ednse_config* cfg, uint64_t seed) {
  return guarded([&] {
    require(cfg, "null config");
    cfg->cfg.solver.seed = seed;
  });
}

ednse_status ednse_config_set_output_dir(ednse_config* cfg, const char* dir) {
  return guarded([&] {
    require(cfg && dir && *dir, "null config or empty directory");
    cfg->cfg.output_dir = dir;
  });
}

ednse_status ednse_config_serialize(const ednse_config* cfg, char* buf, size_t size, size_t* needed) {
  return guarded([&] {
    require(cfg, "null config");
    const std::string text = ednse::serialize_config(cfg->cfg);
    if (needed) *needed = text.size();
    if (buf && size > 0) {
      const size_t n = std::min(size - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
  });
}

void ednse_config_free(ednse_config* cfg) { delete cfg; }

ednse_status ednse_scenario_run(const ednse_config* cfg, ednse_result** out) {
  return guarded([&] {
    require(cfg && out, "null argument");
    *out = new ednse_result{ednse::run_scenario(cfg->cfg)};
  });
}

int ednse_result_passed(const ednse_result* r) { return r && r->result.pass ? 1 : 0; }

const char* ednse_result_scenario(const ednse_result* r) { return r ? r->result.scenario.c_str() : ""; }

const char* ednse_result_reason(const ednse_result* r) { return r ? r->result.reason.c_str() : ""; }

size_t ednse_result_metric_count(const ednse_result* r) { return r ? r->result.metrics.size() : 0; }

ednse_status ednse_result_metric(const ednse_result* r, size_t i, const char** name, double* value) {
  return guarded([&] {
    require(r && name && value, "null argument");
    require(i < r->result.metrics.size(), "metric index out of range");
    *name = r->result.metrics[i].first.c_str();
    *value = r->result.metrics[i].second;
  });
}

size_t ednse_result_artifact_count(const ednse_result* r) { return r ? r->result.artifacts.size() : 0; }

const char* ednse_result_artifact(const ednse_result* r, size_t i) {
  if (!r || i >= r->result.artifacts.size()) return nullptr;
  return r->result.artifacts[i].c_str();
}

void ednse_result_free(ednse_result* r) { delete r; }

ednse_status ednse_field_taylor_green(int n, double amplitude, ednse_field** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = new ednse_field{ednse::SimState{0.0, 0, ednse::taylor_green(grid_of(n), amplitude)}};
  });
}

ednse_status ednse_field_random(int n, double slope, double k_peak, uint64_t seed, double norm, ednse_field** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = new ednse_field{ednse::SimState{0.0, 0, ednse::random_divfree_field(grid_of(n), slope, k_peak, seed, norm)}};
  });
}

ednse_status ednse_field_l2_norm(const ednse_field* f, double* out) {
  return guarded([&] {
    require(f && out, "null argument");
    *out = ednse::l2_norm(f->state.u);
  });
}

ednse_status ednse_field_write_checkpoint(const ednse_field* f, const char* path) {
  return guarded([&] {
    require(f && path, "null argument");
    ednse::io::write_checkpoint(path, f->state);
  });
}

ednse_status ednse_field_read_checkpoint(const char* path, ednse_field** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new ednse_field{ednse::io::read_checkpoint(path)};
  });
}

void ednse_field_free(ednse_field* f) { delete f; }

ednse_status ednse_lambda0(double a, double b, double* out) {
  return guarded([&] {
    require(out, "null argument");
    *out = ednse::lambda0(a, b).lambda0;
  });
}

ednse_status ednse_m_b(double b, double* out) {
  return guarded([&] {
    require(out, "null argument");
    *out = ednse::m_b_constant(b);
  });
}

}  // extern "C"
