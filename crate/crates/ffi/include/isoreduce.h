#ifndef ISOREDUCE_H
#define ISOREDUCE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which matrix [`iso_incidence_to_matrix`] builds.
 */
typedef enum IsoMode {
  /**
   * `[[0, A], [A^T, 0]]`.
   */
  ISO_MODE_BIPARTITE = 0,
  /**
   * `A A^T`.
   */
  ISO_MODE_ROWS = 1,
  /**
   * `A^T A`.
   */
  ISO_MODE_COLS = 2,
} IsoMode;

typedef enum IsoStatus {
  ISO_STATUS_OK = 0,
  ISO_STATUS_INVALID_ARGUMENT = 1,
  ISO_STATUS_SINGULAR = 2,
  ISO_STATUS_POLE = 3,
  ISO_STATUS_CONVERGENCE = 4,
  ISO_STATUS_PARSE = 5,
  ISO_STATUS_NULL_POINTER = 6,
  ISO_STATUS_UTF8 = 7,
  ISO_STATUS_PANIC = 8,
} IsoStatus;

/**
 * Core and peripheral levels of a sequential reduction.
 */
typedef struct IsoHierarchy IsoHierarchy;

/**
 * Two-mode 0/1 incidence data.
 */
typedef struct IsoIncidence IsoIncidence;

/**
 * Square labeled matrix over the rational functions in `x`.
 */
typedef struct IsoMatrix IsoMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread; empty after success. The
 * pointer stays valid until the next library call on the same thread.
 */
const char *iso_last_error(void);

/**
 * Library version, a static string.
 */
const char *iso_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void iso_string_free(char *s);

/**
 * Parses incidence CSV text; `year` completes `M/D` dates.
 *
 * # Safety
 * `csv` must be a NUL-terminated string; `out` must be writable.
 */
enum IsoStatus iso_incidence_from_csv(const char *csv, int32_t year, struct IsoIncidence **out);

/**
 * # Safety
 * `p` must be null or a handle from this library that has not been freed.
 */
void iso_incidence_free(struct IsoIncidence *p);

/**
 * # Safety
 * `data` must be a live incidence handle; `out` must be writable.
 */
enum IsoStatus iso_incidence_to_matrix(const struct IsoIncidence *data,
                                       enum IsoMode mode,
                                       struct IsoMatrix **out);

/**
 * Parses a matrix CSV whose entries are rational functions such as
 * `(1)/(x^2 - 1)`.
 *
 * # Safety
 * `csv` must be a NUL-terminated string; `out` must be writable.
 */
enum IsoStatus iso_matrix_from_csv(const char *csv, struct IsoMatrix **out);

/**
 * # Safety
 * `p` must be null or a handle from this library that has not been freed.
 */
void iso_matrix_free(struct IsoMatrix *p);

/**
 * # Safety
 * `m` must be a live matrix handle; `out` must be writable.
 */
enum IsoStatus iso_matrix_dim(const struct IsoMatrix *m, size_t *out);

/**
 * Label of node `i`. Free the result with [`iso_string_free`].
 *
 * # Safety
 * `m` must be a live matrix handle; `out` must be writable.
 */
enum IsoStatus iso_matrix_label(const struct IsoMatrix *m, size_t i, char **out);

/**
 * Entry `(i, j)` in canonical text form. Free with [`iso_string_free`].
 *
 * # Safety
 * `m` must be a live matrix handle; `out` must be writable.
 */
enum IsoStatus iso_matrix_entry(const struct IsoMatrix *m, size_t i, size_t j, char **out);

/**
 * Whole matrix as CSV. Free with [`iso_string_free`].
 *
 * # Safety
 * `m` must be a live matrix handle; `out` must be writable.
 */
enum IsoStatus iso_matrix_to_csv(const struct IsoMatrix *m, char **out);

/**
 * Reduces `m` onto the `n_keep` labels in `keep`.
 *
 * # Safety
 * `m` must be a live matrix handle, `keep` an array of `n_keep`
 * NUL-terminated strings, and `out` writable.
 */
enum IsoStatus iso_reduce(const struct IsoMatrix *m,
                          const char *const *keep,
                          size_t n_keep,
                          struct IsoMatrix **out);

/**
 * Sequential reduction under the minimal-degree rule.
 *
 * # Safety
 * `m` must be a live matrix handle; `out` must be writable.
 */
enum IsoStatus iso_hierarchy_min_degree(const struct IsoMatrix *m, struct IsoHierarchy **out);

/**
 * # Safety
 * `p` must be null or a handle from this library that has not been freed.
 */
void iso_hierarchy_free(struct IsoHierarchy *p);

/**
 * Number of reduction steps, i.e. of peripheral levels.
 *
 * # Safety
 * `h` must be a live hierarchy handle; `out` must be writable.
 */
enum IsoStatus iso_hierarchy_step_count(const struct IsoHierarchy *h, size_t *out);

/**
 * Core, levels and per-step degree tables as JSON. Free with
 * [`iso_string_free`].
 *
 * # Safety
 * `h` must be a live hierarchy handle; `out` must be writable.
 */
enum IsoStatus iso_hierarchy_to_json(const struct IsoHierarchy *h, char **out);

/**
 * Checks that reducing `m` onto `keep` preserves its spectrum. `passed`
 * receives the verdict and, when not null, `report_json` the full report
 * (free with [`iso_string_free`]).
 *
 * # Safety
 * `m` must be a live matrix handle, `keep` an array of `n_keep`
 * NUL-terminated strings, `passed` writable and `report_json` null or
 * writable.
 */
enum IsoStatus iso_verify_spectrum(const struct IsoMatrix *m,
                                   const char *const *keep,
                                   size_t n_keep,
                                   double tolerance,
                                   bool *passed,
                                   char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ISOREDUCE_H */
