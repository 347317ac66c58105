#ifndef LEO_H
#define LEO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LeoAlgorithm {
  LEO_ALGORITHM_LEO = 0,
  LEO_ALGORITHM_GA = 1,
  LEO_ALGORITHM_PSO = 2,
} LeoAlgorithm;

typedef enum LeoStatus {
  LEO_STATUS_OK = 0,
  LEO_STATUS_NULL_POINTER = 1,
  LEO_STATUS_INVALID_ARGUMENT = 2,
  LEO_STATUS_CONFIG = 3,
  LEO_STATUS_EVALUATION = 4,
  LEO_STATUS_DOMAIN = 5,
  LEO_STATUS_STATS = 6,
  LEO_STATUS_IO = 7,
  LEO_STATUS_INTERNAL = 8,
  LEO_STATUS_PANIC = 9,
} LeoStatus;

typedef struct LeoProblem LeoProblem;

typedef struct LeoResult LeoResult;

/**
 * Mirror of `RunConfig` without the repetition count.
 */
typedef struct LeoConfig {
  size_t population_size;
  size_t iterations;
  double crossover_rate;
  double mutation_rate;
  double alpha_low;
  double alpha_high;
  double sigma_low;
  double sigma_high;
  double epsilon_div;
} LeoConfig;

typedef struct LeoWilcoxon {
  double u_statistic;
  double rank_sum;
  double p_value;
  /**
   * 1 when the exact null distribution was used.
   */
  int32_t exact;
  int32_t significant_at_0_05;
} LeoWilcoxon;

typedef struct LeoSummary {
  size_t n;
  double mean;
  double std;
} LeoSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *leo_last_error(void);

/**
 * Fills `out` with the default run parameters.
 *
 * # Safety
 * `out` must be null or point to writable memory for one `LeoConfig`.
 */
enum LeoStatus leo_config_default(struct LeoConfig *out);

/**
 * Builds a benchmark problem by id (`"TF1"` .. `"TF19"`, `"CEC01"` .. `"CEC10"`).
 *
 * # Safety
 * `id` must be null or a NUL-terminated string; `out` must be null or writable.
 */
enum LeoStatus leo_problem_new(const char *id, struct LeoProblem **out);

/**
 * # Safety
 * `problem` must be null or a handle from [`leo_problem_new`] not yet freed.
 */
void leo_problem_free(struct LeoProblem *problem);

/**
 * # Safety
 * `problem` must be a live handle; `out` must be writable.
 */
enum LeoStatus leo_problem_dimension(const struct LeoProblem *problem, size_t *out);

/**
 * Copies the lower and upper bounds, each of `dimension` values.
 *
 * # Safety
 * `lower` and `upper` must each hold `cap` values.
 */
enum LeoStatus leo_problem_bounds(const struct LeoProblem *problem,
                                  double *lower,
                                  double *upper,
                                  size_t cap,
                                  size_t *len);

/**
 * Objective value at `x`. Noisy problems draw from a stream seeded by `seed`.
 *
 * # Safety
 * `x` must hold `len` values; `out` must be writable.
 */
enum LeoStatus leo_problem_evaluate(const struct LeoProblem *problem,
                                    const double *x,
                                    size_t len,
                                    uint64_t seed,
                                    double *out);

/**
 * One run of `algorithm` (a `LeoAlgorithm` value) on `problem`.
 *
 * # Safety
 * `problem` and `config` must be valid; `out` must be writable.
 */
enum LeoStatus leo_run(const struct LeoProblem *problem,
                       uint32_t algorithm,
                       const struct LeoConfig *config,
                       uint64_t seed,
                       struct LeoResult **out);

/**
 * # Safety
 * `result` must be null or a handle from [`leo_run`] not yet freed.
 */
void leo_result_free(struct LeoResult *result);

/**
 * # Safety
 * `result` must be a live handle; `out` must be writable.
 */
enum LeoStatus leo_result_best_value(const struct LeoResult *result, double *out);

/**
 * # Safety
 * `result` must be a live handle; `out` must be writable.
 */
enum LeoStatus leo_result_evaluations(const struct LeoResult *result, uint64_t *out);

/**
 * Copies the best position. `len` receives the dimension even when `cap`
 * is smaller, so a first call with `cap = 0` sizes the buffer.
 *
 * # Safety
 * `buf` must hold `cap` values; `len` must be writable.
 */
enum LeoStatus leo_result_best_genes(const struct LeoResult *result,
                                     double *buf,
                                     size_t cap,
                                     size_t *len);

/**
 * Best-so-far value per generation, initial population first.
 *
 * # Safety
 * `buf` must hold `cap` values; `len` must be writable.
 */
enum LeoStatus leo_result_convergence(const struct LeoResult *result,
                                      double *buf,
                                      size_t cap,
                                      size_t *len);

/**
 * Two-sided rank-sum test of `a` against `b`.
 *
 * # Safety
 * `a` and `b` must hold `na` and `nb` values; `out` must be writable.
 */
enum LeoStatus leo_wilcoxon(const double *a,
                            size_t na,
                            const double *b,
                            size_t nb,
                            struct LeoWilcoxon *out);

/**
 * # Safety
 * `v` must hold `n` values; `out` must be writable.
 */
enum LeoStatus leo_summarize(const double *v, size_t n, struct LeoSummary *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEO_H */
