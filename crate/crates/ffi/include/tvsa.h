#ifndef TVSA_H
#define TVSA_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Passed as `retained` to request `R = inf`.
 */
#define TVSA_RETAINED_ALL -1

typedef enum TvsaCoolingFamily {
  /**
   * `t0 * n^-rate`.
   */
  TVSA_COOLING_FAMILY_POWER = 0,
  /**
   * `t0 / (n * log(n + e)^rate)`.
   */
  TVSA_COOLING_FAMILY_POWER_LOG = 1,
} TvsaCoolingFamily;

typedef enum TvsaStatus {
  TVSA_STATUS_OK = 0,
  TVSA_STATUS_NULL_POINTER = 1,
  TVSA_STATUS_INVALID_ARGUMENT = 2,
  TVSA_STATUS_CONFIG = 3,
  TVSA_STATUS_RUNTIME = 4,
  TVSA_STATUS_PANIC = 5,
} TvsaStatus;

/**
 * Opaque `(t,d)_R` driver.
 */
typedef struct TvsaDriver TvsaDriver;

/**
 * Opaque validated experiment.
 */
typedef struct TvsaExperiment TvsaExperiment;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *tvsa_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tvsa_version(void);

/**
 * Base-`b` radical inverse of `n`.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum TvsaStatus tvsa_radical_inverse(uint64_t n, uint32_t base, double *out);

/**
 * Whether `sum_n T_n log n` converges; writes 1 (valid) or 0 to `valid`.
 * `family` is a [`TvsaCoolingFamily`] value.
 *
 * # Safety
 * `valid` must be null or valid for writing one `int32_t`.
 */
enum TvsaStatus tvsa_check_cooling(uint32_t family, double t0, double rate, int32_t *valid);

/**
 * Metropolis acceptance probability `exp((phi_y - phi_x) / t) ∧ 1`.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum TvsaStatus tvsa_accept_prob(double phi_y, double phi_x, double t, double *out);

/**
 * Creates a base-2 driver of dimension `dim`. `retained` is `R`, or
 * [`TVSA_RETAINED_ALL`] for the deterministic sequence.
 *
 * # Safety
 * `out` must be null or valid for writing one pointer.
 */
enum TvsaStatus tvsa_driver_new(size_t dim,
                                int64_t retained,
                                uint64_t seed,
                                struct TvsaDriver **out);

/**
 * Writes the next driver point: `dim` proposal coordinates into `proposal`
 * and the acceptance coordinate into `accept`.
 *
 * # Safety
 * `driver` must come from [`tvsa_driver_new`]; `proposal` must hold `len`
 * doubles; `accept` must be valid for one double.
 */
enum TvsaStatus tvsa_driver_next(struct TvsaDriver *driver,
                                 double *proposal,
                                 size_t len,
                                 double *accept);

/**
 * # Safety
 * `driver` must be null or come from [`tvsa_driver_new`] and not be used afterwards.
 */
void tvsa_driver_free(struct TvsaDriver *driver);

/**
 * Parses and validates an experiment from its JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` valid for one pointer.
 */
enum TvsaStatus tvsa_experiment_from_json(const char *json, struct TvsaExperiment **out);

/**
 * Runs every replication and writes traces and the summary into `out_dir`.
 *
 * # Safety
 * `experiment` must come from [`tvsa_experiment_from_json`]; `out_dir` must
 * be a NUL-terminated path.
 */
enum TvsaStatus tvsa_experiment_run(const struct TvsaExperiment *experiment,
                                    const char *out_dir,
                                    size_t workers,
                                    uint64_t stride);

/**
 * Runs replication `r` in memory and writes its final best value.
 *
 * # Safety
 * `experiment` must come from [`tvsa_experiment_from_json`]; `best` must be
 * valid for one double.
 */
enum TvsaStatus tvsa_experiment_best_value(const struct TvsaExperiment *experiment,
                                           uint32_t replication,
                                           double *best);

/**
 * # Safety
 * `experiment` must be null or come from [`tvsa_experiment_from_json`] and not be used afterwards.
 */
void tvsa_experiment_free(struct TvsaExperiment *experiment);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TVSA_H */
