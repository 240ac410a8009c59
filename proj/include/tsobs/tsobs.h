// Copyright 2026 The tsobs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef TSOBS_TSOBS_H_
#define TSOBS_TSOBS_H_

/*
 * C interface to the tsobs simulation library.
 *
 * Every fallible call returns a tsobs_status; on failure the message is
 * available from tsobs_last_error() on the same thread until the next
 * failing call. Handles are opaque and owned by the caller, who releases
 * them with the matching *_free function (NULL is accepted).
 *
 * Action indices are 1-based where they describe the experiment (fixed
 * actions) and 0-based in the estimator functions, which mirror array
 * positions.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TSOBS_API __declspec(dllexport)
#else
#define TSOBS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tsobs_status {
  TSOBS_OK = 0,
  TSOBS_ERR_RUNTIME = 1,
  TSOBS_ERR_CONFIG = 2,
  TSOBS_ERR_UNSUPPORTED = 3,
  TSOBS_ERR_INVALID_ARGUMENT = 4,
  TSOBS_ERR_DEGENERATE_EVIDENCE = 5,
  TSOBS_ERR_UNDEFINED_AT_ZERO = 6,
  TSOBS_ERR_IO = 7
} tsobs_status;

typedef struct tsobs_config tsobs_config;
typedef struct tsobs_report tsobs_report;
typedef struct tsobs_estimator tsobs_estimator;

TSOBS_API const char* tsobs_version(void);
TSOBS_API const char* tsobs_last_error(void);
TSOBS_API const char* tsobs_status_name(tsobs_status status);
TSOBS_API uint64_t tsobs_derive_seed(uint64_t master_seed, uint64_t index);

/* Configuration ---------------------------------------------------------- */

TSOBS_API tsobs_status tsobs_config_default(tsobs_config** out);
TSOBS_API tsobs_status tsobs_config_parse(const char* text, tsobs_config** out);
TSOBS_API tsobs_status tsobs_config_load(const char* path, tsobs_config** out);
TSOBS_API void tsobs_config_free(tsobs_config* config);

TSOBS_API tsobs_status tsobs_config_set_seed(tsobs_config* config,
                                             uint64_t seed);
TSOBS_API tsobs_status tsobs_config_set_horizon(tsobs_config* config,
                                                uint64_t horizon);
TSOBS_API tsobs_status tsobs_config_set_replications(tsobs_config* config,
                                                     uint64_t replications);
/* Empty string or NULL disables file output. */
TSOBS_API tsobs_status tsobs_config_set_out_dir(tsobs_config* config,
                                                const char* dir);
/* "csv" or "json". */
TSOBS_API tsobs_status tsobs_config_set_format(tsobs_config* config,
                                               const char* format);
/* 0 = TS_OBSERVER_JOBS or hardware concurrency. */
TSOBS_API tsobs_status tsobs_config_set_jobs(tsobs_config* config, int jobs);
TSOBS_API tsobs_status tsobs_config_set_traces(tsobs_config* config,
                                               int enabled);

/* Re-checks the config; the report text lists the problems, one per line.
 * Returns TSOBS_ERR_CONFIG when there are any. */
TSOBS_API tsobs_status tsobs_config_validate(const tsobs_config* config,
                                             tsobs_report** out);
/* Canonical text form, parseable by tsobs_config_parse. */
TSOBS_API tsobs_status tsobs_config_describe(const tsobs_config* config,
                                             tsobs_report** out);

/* Commands ---------------------------------------------------------------
 * Each fills *out with a report. When the config has an output directory
 * the command also writes its files there.
 */

TSOBS_API tsobs_status tsobs_simulate(const tsobs_config* config,
                                      tsobs_report** out);

/* Exact enumeration of every history up to the horizon (grid model,
 * Bernoulli rewards, discrete Thompson sampling). */
TSOBS_API tsobs_status tsobs_enumerate(const tsobs_config* config,
                                       uint64_t horizon, tsobs_report** out);
TSOBS_API tsobs_status tsobs_martingale_check(const tsobs_config* config,
                                              uint64_t horizon,
                                              tsobs_report** out);
/* Runs the check on count random small instances drawn from seed. */
TSOBS_API tsobs_status tsobs_martingale_check_random(uint64_t seed,
                                                     uint64_t count,
                                                     tsobs_report** out);

TSOBS_API tsobs_status tsobs_regret(const tsobs_config* config,
                                    tsobs_report** out);
/* Square-step composite with the given 1-based fixed action. */
TSOBS_API tsobs_status tsobs_counterexample(const tsobs_config* config,
                                            uint64_t fixed_action,
                                            tsobs_report** out);
TSOBS_API tsobs_status tsobs_posterior_convergence(const tsobs_config* config,
                                                   tsobs_report** out);
TSOBS_API tsobs_status tsobs_log_count(const tsobs_config* config,
                                       tsobs_report** out);

/* Reports ---------------------------------------------------------------- */

/* Strings are owned by the report. */
TSOBS_API const char* tsobs_report_text(const tsobs_report* report);
TSOBS_API const char* tsobs_report_json(const tsobs_report* report);
/* Named scalar results; the keys are listed in the report JSON under
 * "numbers". TSOBS_ERR_INVALID_ARGUMENT for an unknown key. */
TSOBS_API tsobs_status tsobs_report_number(const tsobs_report* report,
                                           const char* key, double* out);
TSOBS_API void tsobs_report_free(tsobs_report* report);

/* Observer estimator ----------------------------------------------------- */

TSOBS_API tsobs_status tsobs_estimator_create(size_t num_actions,
                                              tsobs_estimator** out);
TSOBS_API void tsobs_estimator_free(tsobs_estimator* estimator);
TSOBS_API tsobs_status tsobs_estimator_record(tsobs_estimator* estimator,
                                              size_t action);
TSOBS_API uint64_t tsobs_estimator_total(const tsobs_estimator* estimator);
/* Empirical frequency of the subset (unsorted, duplicates ignored).
 * TSOBS_ERR_UNDEFINED_AT_ZERO before the first record. */
TSOBS_API tsobs_status
tsobs_estimator_frequency(const tsobs_estimator* estimator,
                          const size_t* subset, size_t size, double* out);
TSOBS_API tsobs_status
tsobs_estimator_point_estimate(const tsobs_estimator* estimator, size_t* out);
TSOBS_API tsobs_status tsobs_estimator_merge(tsobs_estimator* into,
                                             const tsobs_estimator* from);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TSOBS_TSOBS_H_ */
