#ifndef LAXFORGE_H
#define LAXFORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LfSpectralKind {
  LF_SPECTRAL_KIND_UNTWISTED = 0,
  LF_SPECTRAL_KIND_TWISTED = 1,
} LfSpectralKind;

typedef enum LfStatus {
  LF_STATUS_OK = 0,
  LF_STATUS_NULL_ARGUMENT = 1,
  LF_STATUS_INVALID_INPUT = 2,
  LF_STATUS_UNSUPPORTED_RANK = 3,
  LF_STATUS_PARSE = 4,
  LF_STATUS_SCHEMA = 5,
  LF_STATUS_POLE = 6,
  LF_STATUS_RELATION_VIOLATION = 7,
  LF_STATUS_CHECK_FAILED = 8,
  LF_STATUS_IO = 9,
  LF_STATUS_INTERNAL = 10,
  LF_STATUS_PANIC = 11,
} LfStatus;

/**
 * Opaque handle to the root data of `osp(m|n)`.
 */
typedef struct LfAlgebra LfAlgebra;

/**
 * Opaque handle to a complete set of `σ̂` operators on some module.
 */
typedef struct LfSigma LfSigma;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *lf_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void lf_string_free(char *s);

/**
 * # Safety
 * `out` must be a valid pointer to write the handle to.
 */
enum LfStatus lf_algebra_new(int64_t m, int64_t n, struct LfAlgebra **out);

/**
 * # Safety
 * `a` must be null or a handle from [`lf_algebra_new`], not yet freed.
 */
void lf_algebra_free(struct LfAlgebra *a);

/**
 * Dimension `m + n` of the vector module; 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t lf_algebra_dim(const struct LfAlgebra *a);

/**
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum LfStatus lf_algebra_to_json(const struct LfAlgebra *a, char **out);

/**
 * Operators on the vector module.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum LfStatus lf_sigma_vector(const struct LfAlgebra *a, struct LfSigma **out);

/**
 * Operators on a module given as a representation JSON document.
 *
 * # Safety
 * `rep_json` must be a nul-terminated string and `out` a valid pointer.
 */
enum LfStatus lf_sigma_from_rep_json(const char *rep_json, struct LfSigma **out);

/**
 * # Safety
 * `s` must be null or a live handle.
 */
void lf_sigma_free(struct LfSigma *s);

/**
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum LfStatus lf_sigma_to_json(const struct LfSigma *s, char **out);

/**
 * The R-matrix assembled from `s`, as JSON.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum LfStatus lf_r_matrix_json(const struct LfSigma *s, char **out);

/**
 * Runs the comma-separated `suites` (or `all`). The JSON report is written
 * to `report` in every case; the status is `CheckFailed` when any suite
 * fails. Spectral suites use 20 samples and `seed`.
 *
 * # Safety
 * `s` must be a live handle, `suites` a nul-terminated string and `report`
 * a valid pointer.
 */
enum LfStatus lf_verify(const struct LfSigma *s, const char *suites, uint64_t seed, char **report);

/**
 * Exact value of the spectral R-matrix at `s = q^{1/2}` and `z`, given as
 * rational strings such as `"3/2"`. Output entries are `[row, col, "p/q"]`,
 * 1-based.
 *
 * # Safety
 * `a` must be a live handle, `s` and `z` nul-terminated strings and `out` a
 * valid pointer.
 */
enum LfStatus lf_spectral_eval(const struct LfAlgebra *a,
                               enum LfSpectralKind kind,
                               const char *s,
                               const char *z,
                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAXFORGE_H */
