#ifndef EFB_H
#define EFB_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum EfbStatus {
  EFB_STATUS_OK = 0,
  EFB_STATUS_NULL_POINTER = 1,
  EFB_STATUS_INVALID_UTF8 = 2,
  EFB_STATUS_PARSE = 3,
  EFB_STATUS_INVALID_ARGUMENT = 4,
  EFB_STATUS_MISMATCH = 5,
  EFB_STATUS_SIZE_CAP = 6,
  EFB_STATUS_UNSUPPORTED = 7,
  EFB_STATUS_INVARIANT = 8,
  EFB_STATUS_PANIC = 9,
} EfbStatus;

/**
 * Which basis a string is written in.
 */
typedef enum EfbBasis {
  EFB_BASIS_EFB = 0,
  EFB_BASIS_GAMMA = 1,
} EfbBasis;

/**
 * Opaque multivector handle.
 */
typedef struct EfbMultivector EfbMultivector;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *efb_version(void);

/**
 * Description of the last failure on this thread, or an empty string. The
 * pointer stays valid until the next call into this library on the thread.
 */
const char *efb_last_error_message(void);

/**
 * Parses `src` in `basis` for `Cl(m,m)`; exact rationals unless `float_mode`.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` a writable pointer.
 * The handle written to `out` must be released with [`efb_multivector_free`].
 */
enum EfbStatus efb_parse(uint32_t m,
                         bool float_mode,
                         enum EfbBasis basis,
                         const char *src,
                         struct EfbMultivector **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `a` must be null or a handle from this library not yet freed.
 */
void efb_multivector_free(struct EfbMultivector *a);

/**
 * Writes the product `a b` as a new handle.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a writable pointer.
 */
enum EfbStatus efb_mul(const struct EfbMultivector *a,
                       const struct EfbMultivector *b,
                       struct EfbMultivector **out);

/**
 * Number of stored EFB terms, or 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t efb_term_count(const struct EfbMultivector *a);

/**
 * Formats `a` in `basis`.
 *
 * # Safety
 * `a` must be a live handle and `out` a writable pointer; release the
 * string with [`efb_string_free`].
 */
enum EfbStatus efb_to_string(const struct EfbMultivector *a, enum EfbBasis basis, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void efb_string_free(char *s);

/**
 * Matrix image of `a` as JSON `{"m":…,"entries":[[…]]}`.
 *
 * # Safety
 * `a` must be a live handle and `out` a writable pointer; release the
 * string with [`efb_string_free`].
 */
enum EfbStatus efb_matrix_json(const struct EfbMultivector *a, char **out);

/**
 * Eigenvalues of the volume element: `right` for `Γa`, `left` for `aΓ`.
 * Each is `+1`, `-1`, or `0` when `a` is not an eigenvector on that side.
 *
 * # Safety
 * `a` must be a live handle; `right` and `left` must be writable.
 */
enum EfbStatus efb_gamma_eigen(const struct EfbMultivector *a, int8_t *right, int8_t *left);

/**
 * Whether `a`, which must lie in one spinor space, is a simple spinor.
 *
 * # Safety
 * `a` must be a live exact-mode handle and `out` writable.
 */
enum EfbStatus efb_is_simple(const struct EfbMultivector *a, bool *out);

/**
 * Annihilating totally null plane of the spinor `a`, as text
 * `span{…}`, with its dimension in `dim`.
 *
 * # Safety
 * `a` must be a live exact-mode handle; `dim` and `out` must be writable.
 * Release the string with [`efb_string_free`].
 */
enum EfbStatus efb_annihilator(const struct EfbMultivector *a, uint32_t *dim, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EFB_H */
