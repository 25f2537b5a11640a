/* Copyright 2026 The OCCO Authors
 * SPDX-License-Identifier: Apache-2.0 */
#ifndef OCCO_OCCO_H_
#define OCCO_OCCO_H_

#include <stddef.h>

#if defined(_WIN32)
#define OCCO_API __declspec(dllexport)
#else
#define OCCO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum occo_status {
  OCCO_OK = 0,
  OCCO_ERR_CONFIG = 1,
  OCCO_ERR_INVARIANT = 2,
  OCCO_ERR_IO = 3,
  OCCO_ERR_INPUT = 4,
  OCCO_ERR_DOMAIN = 5,
  OCCO_ERR_PROTOCOL = 6,
  OCCO_ERR_INTERNAL = 7
} occo_status;

typedef struct occo_config occo_config;
typedef struct occo_trace occo_trace;

/* One round of a trace. Fields an algorithm does not produce are NaN
 * (doubles) or -1 (solver_iterations). */
typedef struct occo_trace_row {
  long t;
  double x;
  double y;
  double u;
  double v;
  double gap;
  double cum_gap;
  double avg_gap;
  double w;
  double omega;
  double xi[4];
  double eta;
  double gamma;
  double theta;
  double vartheta;
  double zeta;
  long solver_iterations;
} occo_trace_row;

/* Message of the last failed call on this thread; empty when none. */
OCCO_API const char* occo_last_error(void);
OCCO_API const char* occo_version(void);

OCCO_API occo_status occo_config_create(occo_config** out);
OCCO_API void occo_config_destroy(occo_config* cfg);
/* Keys: case, level, rounds, seed, algo, delays, epsilon, tol, fp_tol, beta,
 * t0, solver, cross_check, lambda, mu, out. */
OCCO_API occo_status occo_config_set(occo_config* cfg, const char* key, const char* value);
/* Applies a flat key=value file on top of the current settings. */
OCCO_API occo_status occo_config_load_file(occo_config* cfg, const char* path);

/* Runs one experiment. Writes the trace CSV when "out" is set. */
OCCO_API occo_status occo_run(const occo_config* cfg, occo_trace** out);
OCCO_API void occo_trace_destroy(occo_trace* trace);
OCCO_API occo_status occo_trace_length(const occo_trace* trace, size_t* out);
OCCO_API occo_status occo_trace_row_at(const occo_trace* trace, size_t index, occo_trace_row* out);
/* Writes the trace CSV; the solver flag column is only available here. */
OCCO_API occo_status occo_trace_write_csv(const occo_trace* trace, const char* path);

/* Long-format time-averaged gap file plus a plotting script stub. */
OCCO_API occo_status occo_plotdata_write(const occo_trace* const* traces, const char* const* names, size_t count,
                                         const char* path);

/* Runs the sweep described by a key=value file; list keys are comma separated. */
OCCO_API occo_status occo_sweep_file(const char* path, size_t* runs);

#ifdef __cplusplus
}
#endif

#endif /* OCCO_OCCO_H_ */
