#ifndef DIRAC_FAMILIES_H
#define DIRAC_FAMILIES_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every entry point.
 */
typedef enum DfStatus {
  DF_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  DF_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  DF_STATUS_INVALID_UTF8 = 2,
  /**
   * Parameters out of range or malformed (dimension, twist, path, cup form).
   */
  DF_STATUS_INVALID_INPUT = 3,
  /**
   * A numerical safeguard fired (degenerate endpoint, aliasing, failed certificate).
   */
  DF_STATUS_NUMERICAL_FAILURE = 4,
  /**
   * The request is well formed but not supported at this size or in this mode.
   */
  DF_STATUS_UNSUPPORTED = 5,
  /**
   * An index argument was past the end of a handle.
   */
  DF_STATUS_OUT_OF_RANGE = 6,
  /**
   * A `verify` suite ran and some check failed.
   */
  DF_STATUS_CHECK_FAILED = 7,
  /**
   * The library panicked; this is a bug.
   */
  DF_STATUS_INTERNAL = 8,
} DfStatus;

/**
 * Opaque spectrum of a truncated twisted Dirac operator.
 */
typedef struct DfSpectrum DfSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *df_last_error_message(void);

/**
 * Releases a string returned by the library.
 *
 * # Safety
 * `s` must be null or a pointer returned by this library and not yet freed.
 */
void df_string_free(char *s);

/**
 * Computes the spectrum on `T^dim` with twist `twist` (comma-separated
 * rationals such as `"1/3,-1/4"`) over modes `|k_j| <= cutoff`.
 *
 * # Safety
 * `twist` must be a valid C string; `out` must be writable.
 */
enum DfStatus df_spectrum_new(size_t dim,
                              const char *twist,
                              int64_t cutoff,
                              struct DfSpectrum **out);

/**
 * Number of distinct eigenvalues in the spectrum, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle from [`df_spectrum_new`].
 */
size_t df_spectrum_len(const struct DfSpectrum *s);

/**
 * Eigenvalue and multiplicity of entry `index` (ascending order).
 *
 * # Safety
 * `s` must be a live handle; `value` and `multiplicity` must be writable.
 */
enum DfStatus df_spectrum_entry(const struct DfSpectrum *s,
                                size_t index,
                                double *value,
                                uint64_t *multiplicity);

/**
 * The spectrum as a JSON document; free with [`df_string_free`].
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum DfStatus df_spectrum_to_json(const struct DfSpectrum *s, char **out);

/**
 * Releases a spectrum handle.
 *
 * # Safety
 * `s` must be null or a handle from [`df_spectrum_new`] not yet freed.
 */
void df_spectrum_free(struct DfSpectrum *s);

/**
 * Exact spectral flow along a path given as JSON (a list of vertices, or
 * `{"vertices": [...], "closed": bool}`).
 *
 * # Safety
 * `path_json` must be a valid C string; `flow` must be writable.
 */
enum DfStatus df_exact_flow(const char *path_json, int64_t cutoff, int64_t *flow);

/**
 * First Chern number of the index bundle of the chiral family on `T^2`,
 * summed from local windings at the kernel jumps.
 *
 * # Safety
 * `c1` must be writable.
 */
enum DfStatus df_family_index_t2(int64_t cutoff, double radius, size_t samples, int64_t *c1);

/**
 * Ranks of even and odd cohomology of the twisted complex of a cup form
 * written as `"1,2,3:1; 4,5,6:-2"` (one-based indices).
 *
 * # Safety
 * `cup` must be a valid C string; `even` and `odd` must be writable.
 */
enum DfStatus df_bar_ranks(size_t betti, const char *cup, size_t *even, size_t *odd);

/**
 * The A-hat class truncated at dimension `dim`, rendered as text.
 *
 * # Safety
 * `out` must be writable; the result is freed with [`df_string_free`].
 */
enum DfStatus df_a_hat(uint32_t dim, char **out);

/**
 * Chern character of the index bundle over the parameter torus of `T^dim`,
 * rendered as text.
 *
 * # Safety
 * `out` must be writable; the result is freed with [`df_string_free`].
 */
enum DfStatus df_family_ch_torus(size_t dim, char **out);

/**
 * Runs the named verification suite and stores its JSON report in `report`
 * (may be null). Returns [`DfStatus::CheckFailed`] when a check fails.
 *
 * # Safety
 * `suite` must be a valid C string; `report` must be null or writable.
 */
enum DfStatus df_verify(const char *suite, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIRAC_FAMILIES_H */
