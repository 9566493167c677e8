/* Copyright the ednse authors. */
/* SPDX-License-Identifier: Apache-2.0 */

/* C interface to the ednse solver and scenario runner. Every object is an
 * opaque handle released with its matching *_free function. Calls return an
 * ednse_status; on failure ednse_last_error() describes the most recent
 * error raised on the calling thread. */

#ifndef EDNSE_EDNSE_H
#define EDNSE_EDNSE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EDNSE_API __declspec(dllexport)
#else
#define EDNSE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ednse_status {
  EDNSE_OK = 0,
  EDNSE_INVALID_ARGUMENT = 1,
  EDNSE_PARSE_ERROR = 2,
  EDNSE_IO_ERROR = 3,
  EDNSE_NUMERIC_ERROR = 4,
  EDNSE_ENERGY_VIOLATION = 5,
  EDNSE_INTERNAL_ERROR = 6
} ednse_status;

typedef struct ednse_config ednse_config;
typedef struct ednse_result ednse_result;
typedef struct ednse_field ednse_field;

EDNSE_API const char* ednse_version(void);
/* Message for the last failing call on this thread; "" when none. */
EDNSE_API const char* ednse_last_error(void);
EDNSE_API ednse_status ednse_set_threads(int threads);

/* scenario may be NULL; otherwise it must match any scenario key in text. */
EDNSE_API ednse_status ednse_config_parse(const char* text, const char* scenario, ednse_config** out);
EDNSE_API ednse_status ednse_config_load(const char* path, const char* scenario, ednse_config** out);
EDNSE_API ednse_status ednse_config_set_seed(ednse_config* cfg, uint64_t seed);
EDNSE_API ednse_status ednse_config_set_output_dir(ednse_config* cfg, const char* dir);
/* Writes the canonical text form into buf (NUL-terminated, truncated to
 * size) and the full length without terminator into *needed. */
EDNSE_API ednse_status ednse_config_serialize(const ednse_config* cfg, char* buf, size_t size, size_t* needed);
EDNSE_API void ednse_config_free(ednse_config* cfg);

/* Runs the configured scenario. Numerical failures inside the scenario are
 * reported through the result (passed = 0 with a reason), not the status. */
EDNSE_API ednse_status ednse_scenario_run(const ednse_config* cfg, ednse_result** out);
EDNSE_API int ednse_result_passed(const ednse_result* r);
EDNSE_API const char* ednse_result_scenario(const ednse_result* r);
EDNSE_API const char* ednse_result_reason(const ednse_result* r);
EDNSE_API size_t ednse_result_metric_count(const ednse_result* r);
EDNSE_API ednse_status ednse_result_metric(const ednse_result* r, size_t i, const char** name, double* value);
EDNSE_API size_t ednse_result_artifact_count(const ednse_result* r);
EDNSE_API const char* ednse_result_artifact(const ednse_result* r, size_t i);
EDNSE_API void ednse_result_free(ednse_result* r);

EDNSE_API ednse_status ednse_field_taylor_green(int n, double amplitude, ednse_field** out);
EDNSE_API ednse_status ednse_field_random(int n, double slope, double k_peak, uint64_t seed, double norm,
                                          ednse_field** out);
EDNSE_API ednse_status ednse_field_l2_norm(const ednse_field* f, double* out);
EDNSE_API ednse_status ednse_field_write_checkpoint(const ednse_field* f, const char* path);
EDNSE_API ednse_status ednse_field_read_checkpoint(const char* path, ednse_field** out);
EDNSE_API void ednse_field_free(ednse_field* f);

EDNSE_API ednse_status ednse_lambda0(double a, double b, double* out);
EDNSE_API ednse_status ednse_m_b(double b, double* out);

#ifdef __cplusplus
}
#endif

#endif /* EDNSE_EDNSE_H */
