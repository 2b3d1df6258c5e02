#ifndef MODFORMS_H
#define MODFORMS_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call. Zero is success.
 */
typedef enum MfStatus {
  MF_OK = 0,
  MF_ERR_NULL_POINTER = 1,
  MF_ERR_INVALID_ARGUMENT = 2,
  MF_ERR_INSUFFICIENT_PRECISION = 3,
  MF_ERR_INVALID_WEIGHT = 4,
  MF_ERR_PARITY_MISMATCH = 5,
  MF_ERR_UNSUPPORTED = 6,
  MF_ERR_ARITHMETIC = 7,
  MF_ERR_VALENCE = 8,
  MF_ERR_UTF8 = 9,
  MF_ERR_PANIC = 10,
} MfStatus;

/**
 * A normalized Hecke eigenform with coefficients in its Hecke field.
 */
typedef struct MfEigenform MfEigenform;

/**
 * A power series with rational coefficients.
 */
typedef struct MfSeries MfSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *mf_version(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void mf_string_free(char *s);

/**
 * Normalized Eisenstein series `E_k` (constant term 1) to `prec` terms.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum MfStatus mf_series_eisenstein(uint32_t k, size_t prec, struct MfSeries **out);

/**
 * `Delta = q prod (1 - q^n)^24` to `prec` terms.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum MfStatus mf_series_delta(size_t prec, struct MfSeries **out);

/**
 * Product of two series, truncated to the shorter precision.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be valid for writing.
 */
enum MfStatus mf_series_mul(const struct MfSeries *a, const struct MfSeries *b, struct MfSeries **out);

/**
 * Number of known coefficients, or 0 for NULL.
 *
 * # Safety
 * `s` must be a live handle or NULL.
 */
size_t mf_series_len(const struct MfSeries *s);

/**
 * Coefficient of `q^n` as a string `p/q` (or an integer); free with
 * [`mf_string_free`].
 *
 * # Safety
 * `s` must be a live handle; `out` must be valid for writing.
 */
enum MfStatus mf_series_coeff(const struct MfSeries *s, size_t n, char **out);

/**
 * Releases a series handle. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void mf_series_free(struct MfSeries *s);

/**
 * `T_n` on `S_k` as JSON `{n, weight, dim, matrix, charpoly}`.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum MfStatus mf_hecke_json(uint64_t n, uint32_t k, char **out);

/**
 * Normalized eigenform of `S_k` to `prec` terms (0 selects a default).
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum MfStatus mf_eigenform_new(uint32_t k, size_t prec, struct MfEigenform **out);

/**
 * Degree of the Hecke field, or 0 for NULL.
 *
 * # Safety
 * `f` must be a live handle or NULL.
 */
size_t mf_eigenform_degree(const struct MfEigenform *f);

/**
 * The eigenform as JSON, coefficients in the power basis of its field.
 *
 * # Safety
 * `f` must be a live handle; `out` must be valid for writing.
 */
enum MfStatus mf_eigenform_json(const struct MfEigenform *f, char **out);

/**
 * Releases an eigenform handle. NULL is ignored.
 *
 * # Safety
 * `f` must come from this library and must not be used afterwards.
 */
void mf_eigenform_free(struct MfEigenform *f);

/**
 * Runs a named identity check (`ramanujan`, `e24`, `e32`, `table1`).
 * `prec` 0 selects the default. `verified` receives the verdict and
 * `report` (may be NULL) the JSON report.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `verified` must be valid for
 * writing; `report` must be NULL or valid for writing.
 */
enum MfStatus mf_verify(const char *name, size_t prec, bool *verified, char **report);

/**
 * Decomposition of `f^2` (f the weight-`k` eigenform) as JSON;
 * `all_nonzero` receives whether every coefficient is nonzero.
 *
 * # Safety
 * `all_nonzero` and `out` must be valid for writing.
 */
enum MfStatus mf_decompose_json(uint32_t k, size_t prec, bool *all_nonzero, char **out);

/**
 * Zeros of `E_12n` on the arc and the j-value comparison, as JSON;
 * `passed` receives the verdict.
 *
 * # Safety
 * `passed` and `out` must be valid for writing.
 */
enum MfStatus mf_zeros_json(uint32_t n, double tol_zero, double tol_match, uint64_t seed, bool *passed, char **out);

/**
 * Message for the most recent failed call on this thread, or NULL.
 *
 * The pointer stays valid until the next call into this library on the
 * same thread; do not free it.
 */
const char *mf_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODFORMS_H */
