/*
 * Copyright 2026 The minnorm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * minnorm: minimum-norm load balancing on unrelated machines.
 *
 * Handles are opaque and owned by the caller; free them with the matching
 * *_free function. Functions returning mn_status report failures through the
 * code and a thread-local message available from mn_last_error(). Strings
 * returned through char** out-parameters are heap allocated and must be
 * released with mn_free_string().
 */
#ifndef MINNORM_MINNORM_H_
#define MINNORM_MINNORM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MINNORM_BUILDING_LIBRARY)
#define MINNORM_API __declspec(dllexport)
#else
#define MINNORM_API __declspec(dllimport)
#endif
#else
#define MINNORM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mn_instance mn_instance;
typedef struct mn_norm mn_norm;

typedef enum mn_status {
  MN_OK = 0,
  MN_ERR_INVALID_ARGUMENT = 1,
  MN_ERR_INVALID_ASSIGNMENT = 2,
  MN_ERR_DIMENSION_MISMATCH = 3,
  MN_ERR_INVALID_SPEC = 4,
  MN_ERR_PARSE = 5,
  MN_ERR_IO = 6,
  MN_ERR_CAP_EXCEEDED = 7,
  MN_ERR_NUMERICAL = 8,
  MN_ERR_CONTRACT = 9,
  MN_ERR_INTERNAL = 10
} mn_status;

typedef enum mn_solver {
  MN_SOLVER_SUBGRADIENT = 0,
  MN_SOLVER_CUTTING_PLANE = 1
} mn_solver;

typedef struct mn_options {
  double eps;                /* relative accuracy, > 0 */
  int64_t max_iters;         /* 0 selects the backend default */
  mn_solver solver;
  uint64_t seed;
  int timing;                /* nonzero adds wall_time_ms to reports */
  int strict;                /* nonzero: unconverged solve runs are "unresolved" */
  uint64_t enumeration_cap;  /* brute-force limit on m^n */
  const char* command;       /* echoed into reports; may be NULL */
} mn_options;

MINNORM_API void mn_options_init(mn_options* opts);

MINNORM_API const char* mn_version(void);
MINNORM_API const char* mn_status_string(mn_status status);
/* Message of the last failure on this thread, or "" */
MINNORM_API const char* mn_last_error(void);
MINNORM_API void mn_free_string(char* s);

/* p is row-major, m rows (machines) by n columns (jobs). */
MINNORM_API mn_status mn_instance_create(size_t m, size_t n, const double* p, mn_instance** out);
MINNORM_API mn_status mn_instance_parse(const char* json, mn_instance** out);
MINNORM_API mn_status mn_instance_load(const char* path, mn_instance** out);
MINNORM_API mn_status mn_instance_generate(size_t m, size_t n, uint64_t pmax, uint64_t seed,
                                           mn_instance** out);
MINNORM_API mn_status mn_instance_to_json(const mn_instance* inst, char** out);
MINNORM_API size_t mn_instance_machines(const mn_instance* inst);
MINNORM_API size_t mn_instance_jobs(const mn_instance* inst);
MINNORM_API void mn_instance_free(mn_instance* inst);

/* loads_out must hold mn_instance_machines(inst) doubles. */
MINNORM_API mn_status mn_load_vector(const mn_instance* inst, const size_t* sigma, size_t n,
                                     double* loads_out);

/* spec is a JSON norm object or shorthand such as "l2", "linf", "top2",
 * "ordered:3,2,1". */
MINNORM_API mn_status mn_norm_parse(const char* spec, size_t dim, mn_norm** out);
MINNORM_API mn_status mn_norm_value(const mn_norm* norm, const double* v, size_t dim,
                                    double* out);
MINNORM_API mn_status mn_norm_subgradient(const mn_norm* norm, const double* v, size_t dim,
                                          double* out);
MINNORM_API void mn_norm_free(mn_norm* norm);

/* Report producers. opts may be NULL for defaults. */
MINNORM_API mn_status mn_solve(const mn_instance* inst, const char* norm_spec,
                               const mn_options* opts, char** report);
MINNORM_API mn_status mn_multinorm(const mn_instance* inst, const char* budgets_json,
                                   const mn_options* opts, char** report);
MINNORM_API mn_status mn_simul(const mn_instance* inst, const mn_options* opts, char** report);
MINNORM_API mn_status mn_exact(const mn_instance* inst, const char* norm_spec,
                               const mn_options* opts, char** report);
/* norms_json: JSON array of norm specs, or NULL for the default set. */
MINNORM_API mn_status mn_bench(const char* corpus_dir, const char* norms_json,
                               const mn_options* opts, char** csv);

/* *ok is set to 1 when every recomputed value matches; diagnostics lists the
 * mismatches one per line and may be NULL. */
MINNORM_API mn_status mn_verify_report(const mn_instance* inst, const char* report_json,
                                       int* ok, char** diagnostics);

/* 0 success, 2 infeasible, 3 unresolved; 1 when the report is unreadable. */
MINNORM_API int mn_report_exit_code(const char* report_json);

#ifdef __cplusplus
}
#endif

#endif /* MINNORM_MINNORM_H_ */
