#ifndef YBW_H
#define YBW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum YbwStatus {
  YBW_STATUS_OK = 0,
  YBW_STATUS_INVALID_ARGUMENT = 1,
  YBW_STATUS_MALFORMED = 2,
  YBW_STATUS_VERIFICATION_FAILED = 3,
  YBW_STATUS_INTERNAL = 4,
  YBW_STATUS_PANIC = 5,
} YbwStatus;

/**
 * Certified couple (R, pi).
 */
typedef struct YbwCouple YbwCouple;

/**
 * Validated parameter set over a finite group.
 */
typedef struct YbwParams YbwParams;

/**
 * Certified R-matrix.
 */
typedef struct YbwRMatrix YbwRMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Free with
 * `ybw_string_free`.
 */
char *ybw_last_error_message(void);

/**
 * Library version. Free with `ybw_string_free`.
 */
char *ybw_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ybw_string_free(char *s);

/**
 * Parses and certifies an R-matrix from its JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum YbwStatus ybw_rmatrix_from_json(const char *json, struct YbwRMatrix **out);

/**
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
enum YbwStatus ybw_rmatrix_dim(const struct YbwRMatrix *r, size_t *out);

/**
 * Thoma parameters of `r`, as `alpha = [..], beta = [..]`.
 *
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
enum YbwStatus ybw_rmatrix_thoma(const struct YbwRMatrix *r, char **out);

/**
 * Normalized character of the n-cycle, as an exact rational string.
 *
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
enum YbwStatus ybw_rmatrix_char_cycle(const struct YbwRMatrix *r, uint32_t n, char **out);

/**
 * # Safety
 * `r` must be null or a handle not yet freed.
 */
void ybw_rmatrix_free(struct YbwRMatrix *r);

/**
 * Parses and validates a parameter file.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum YbwStatus ybw_params_from_json(const char *json, struct YbwParams **out);

/**
 * Smallest d for which a couple can be built. Fails with
 * `VERIFICATION_FAILED` when the parameters are not admissible.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum YbwStatus ybw_params_minimal_d(const struct YbwParams *p, uint64_t *out);

/**
 * Closed-form character value at a wreath element given as JSON.
 *
 * # Safety
 * `p` must be a live handle; `element` a NUL-terminated string; `out` writable.
 */
enum YbwStatus ybw_params_closed_form(const struct YbwParams *p, const char *element, char **out);

/**
 * # Safety
 * `p` must be null or a handle not yet freed.
 */
void ybw_params_free(struct YbwParams *p);

/**
 * Builds and certifies a couple realizing `p`. `d = 0` selects the minimal d.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum YbwStatus ybw_couple_build(const struct YbwParams *p, size_t d, struct YbwCouple **out);

/**
 * Parses and certifies a couple bundle.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum YbwStatus ybw_couple_from_json(const char *json, struct YbwCouple **out);

/**
 * Serializes a couple to its JSON bundle.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum YbwStatus ybw_couple_to_json(const struct YbwCouple *c, char **out);

/**
 * Trace character at a wreath element. The exact value goes to `out`; `re`
 * and `im` receive a floating-point rendering and may be null.
 *
 * # Safety
 * `c` must be a live handle; `element` a NUL-terminated string; `out` writable.
 */
enum YbwStatus ybw_couple_character(const struct YbwCouple *c,
                                    const char *element,
                                    char **out,
                                    double *re,
                                    double *im);

/**
 * # Safety
 * `c` must be null or a handle not yet freed.
 */
void ybw_couple_free(struct YbwCouple *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* YBW_H */
