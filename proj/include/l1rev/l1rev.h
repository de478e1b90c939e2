/* Copyright 2026 The l1rev Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the l1rev library: least absolute deviation fitting
 *
 *   min_x ||A x - b||_1,  A m x n with m > n,
 *
 * solved directly or through the residual basis-pursuit reduction.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns an l1rev_status; on failure the message of the
 * calling thread is available from l1rev_last_error() until the next call
 * that fails. Output handles are left untouched on failure.
 */

#ifndef L1REV_L1REV_H_
#define L1REV_L1REV_H_

#include <stddef.h>
#include <stdint.h>

#if defined(L1REV_BUILDING_LIBRARY)
#define L1REV_API __attribute__((visibility("default")))
#else
#define L1REV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum l1rev_status {
  L1REV_OK = 0,
  L1REV_INVALID_ARGUMENT = 1,
  L1REV_DIMENSION_MISMATCH = 2,
  L1REV_NUMERICAL = 3,
  L1REV_PARSE = 4,
  L1REV_IO = 5,
  L1REV_UNKNOWN_METHOD = 6,
  L1REV_TOO_LARGE = 7,
  L1REV_INTERNAL = 8
} l1rev_status;

typedef struct l1rev_matrix l1rev_matrix;
typedef struct l1rev_vector l1rev_vector;
typedef struct l1rev_report l1rev_report;
typedef struct l1rev_bench l1rev_bench;

L1REV_API const char* l1rev_version(void);
L1REV_API const char* l1rev_status_string(l1rev_status status);
/* Never NULL; empty when the thread has not seen a failure. */
L1REV_API const char* l1rev_last_error(void);

/* --- matrices and vectors ------------------------------------------------ */

/* Copies rows * cols row-major entries; `entries` may be NULL for zeros. */
L1REV_API l1rev_status l1rev_matrix_create(size_t rows, size_t cols, const double* entries,
                                           l1rev_matrix** out);
/* Reads the "m n" header text format; '#' lines are comments. */
L1REV_API l1rev_status l1rev_matrix_load(const char* path, l1rev_matrix** out);
L1REV_API l1rev_status l1rev_matrix_save(const l1rev_matrix* a, const char* path);
L1REV_API size_t l1rev_matrix_rows(const l1rev_matrix* a);
L1REV_API size_t l1rev_matrix_cols(const l1rev_matrix* a);
/* Row-major storage, valid until the handle is freed. */
L1REV_API const double* l1rev_matrix_data(const l1rev_matrix* a);
L1REV_API void l1rev_matrix_free(l1rev_matrix* a);

L1REV_API l1rev_status l1rev_vector_create(size_t size, const double* entries,
                                           l1rev_vector** out);
L1REV_API l1rev_status l1rev_vector_load(const char* path, l1rev_vector** out);
L1REV_API l1rev_status l1rev_vector_save(const l1rev_vector* v, const char* path);
L1REV_API size_t l1rev_vector_size(const l1rev_vector* v);
L1REV_API const double* l1rev_vector_data(const l1rev_vector* v);
L1REV_API void l1rev_vector_free(l1rev_vector* v);

/* --- solver parameters --------------------------------------------------- */

typedef struct l1rev_params {
  double epsilon;
  double lambda;
  size_t maxiter;
  double tau;
  double mu; /* <= 0 picks the method default */
  double zeta;
  double zero_tol;
  double lp_feas_tol;
  double ptb_c;
  size_t ptb_maxiter;
} l1rev_params;

/* epsilon = lambda = 1e-8, maxiter = 10000, tau = 0.02, ptb_maxiter = 15. */
L1REV_API void l1rev_params_default(l1rev_params* params);
L1REV_API l1rev_status l1rev_params_validate(const l1rev_params* params);

/* --- methods ------------------------------------------------------------- */

/* Command-line names in order: l1-ptb, l1-lp, l1-res, ..., oracle. */
L1REV_API size_t l1rev_method_count(void);
L1REV_API const char* l1rev_method_name(size_t index);
/* Display label ("L1-RES") for a name or alias; NULL when unknown. */
L1REV_API const char* l1rev_method_label(const char* name);

/* --- solving ------------------------------------------------------------- */

/* `params` may be NULL for the defaults. A report is produced for iterative
 * methods that stop at their iteration cap; check l1rev_report_converged. */
L1REV_API l1rev_status l1rev_solve(const l1rev_matrix* a, const l1rev_vector* b, const char* method,
                                   const l1rev_params* params, l1rev_report** out);

L1REV_API const char* l1rev_report_label(const l1rev_report* r);
L1REV_API size_t l1rev_report_size(const l1rev_report* r);
L1REV_API const double* l1rev_report_x(const l1rev_report* r);
/* A x - b, length m. */
L1REV_API const double* l1rev_report_residual(const l1rev_report* r);
L1REV_API size_t l1rev_report_residual_size(const l1rev_report* r);
L1REV_API double l1rev_report_cost(const l1rev_report* r);
L1REV_API size_t l1rev_report_iterations(const l1rev_report* r);
L1REV_API int l1rev_report_converged(const l1rev_report* r);
L1REV_API double l1rev_report_runtime(const l1rev_report* r);
/* ||D r - w||_2 for the reduction-based methods, else 0. */
L1REV_API double l1rev_report_rev_feasibility(const l1rev_report* r);
L1REV_API size_t l1rev_report_warning_count(const l1rev_report* r);
L1REV_API const char* l1rev_report_warning(const l1rev_report* r, size_t index);
L1REV_API void l1rev_report_free(l1rev_report* r);

/* --- synthetic data ------------------------------------------------------ */

/* Gaussian A (m x n) and p from `seed`, b = A p, then N(0, noise_variance)
 * noise at round(sparsity * m) positions. Requires m > n >= 2. */
L1REV_API l1rev_status l1rev_generate(size_t m, size_t n, uint64_t seed, double sparsity,
                                      double noise_variance, l1rev_matrix** a,
                                      l1rev_vector** b, l1rev_vector** p);

/* --- experiments --------------------------------------------------------- */

typedef struct l1rev_bench_options {
  const char* experiment; /* "noise-free", "sparse-noise" or "drl" */
  size_t m;
  size_t n;
  size_t repeats;
  uint64_t seed;
  const char* methods; /* comma separated; NULL or "" for all but oracle */
  const double* sparsity;
  size_t sparsity_count; /* 0 keeps the default {0.25} */
  const double* drl;
  size_t drl_count; /* 0 keeps the default grid */
  double noise_variance;
  int noise_is_std;
  size_t threads; /* 0: hardware concurrency; L1REV_THREADS overrides */
  l1rev_params params;
} l1rev_bench_options;

L1REV_API void l1rev_bench_options_default(l1rev_bench_options* options);
L1REV_API l1rev_status l1rev_bench_run(const l1rev_bench_options* options, l1rev_bench** out);
/* `path` NULL or "-" writes to standard output. */
L1REV_API l1rev_status l1rev_bench_write_csv(const l1rev_bench* bench, const char* path);
L1REV_API size_t l1rev_bench_rows(const l1rev_bench* bench);
L1REV_API const char* l1rev_bench_method(const l1rev_bench* bench, size_t row);
L1REV_API double l1rev_bench_mean_rel_err(const l1rev_bench* bench, size_t row);
L1REV_API double l1rev_bench_mean_runtime(const l1rev_bench* bench, size_t row);
L1REV_API double l1rev_bench_sparsity(const l1rev_bench* bench, size_t row);
L1REV_API double l1rev_bench_drl(const l1rev_bench* bench, size_t row);
L1REV_API size_t l1rev_bench_repeats(const l1rev_bench* bench, size_t row);
L1REV_API size_t l1rev_bench_errors(const l1rev_bench* bench, size_t row);
/* First error message of a row, "" when none. */
L1REV_API const char* l1rev_bench_first_error(const l1rev_bench* bench, size_t row);
L1REV_API void l1rev_bench_free(l1rev_bench* bench);

#ifdef __cplusplus
}
#endif

#endif /* L1REV_L1REV_H_ */
