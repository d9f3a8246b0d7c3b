#ifndef CHARVAR_H
#define CHARVAR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible call.
typedef enum CharvarStatus {
  CHARVAR_STATUS_OK = 0,
  CHARVAR_STATUS_NULL_POINTER = 1,
  CHARVAR_STATUS_INVALID_UTF8 = 2,
  CHARVAR_STATUS_INVALID_INPUT = 3,
  // A truncation rank or reduction bound was exceeded.
  CHARVAR_STATUS_LIMIT_EXCEEDED = 4,
  // An internal consistency check failed.
  CHARVAR_STATUS_CHECK_FAILED = 5,
  CHARVAR_STATUS_PANIC = 6,
} CharvarStatus;

// Opaque mixed Hodge polynomial of a character variety.
typedef struct CharvarMixedHodge CharvarMixedHodge;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *charvar_version(void);

// Message of the last failed call on this thread, or NULL. The caller
// owns the result and frees it with `charvar_string_free`.
char *charvar_last_error(void);

// Frees a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void charvar_string_free(char *s);

// Computes the mixed Hodge polynomial for genus `genus` and multiplicity
// data `mu`, written as `"2,1;1,1,1"` with one block per puncture.
//
// # Safety
// `mu` must be a NUL-terminated string and `out` a writable pointer.
enum CharvarStatus charvar_mixed_hodge(uint32_t genus,
                                       const char *mu,
                                       size_t max_rank,
                                       struct CharvarMixedHodge **out);

// Frees a handle. NULL is ignored.
//
// # Safety
// `h` must be NULL or a handle from `charvar_mixed_hodge`, not yet freed.
void charvar_mixed_hodge_free(struct CharvarMixedHodge *h);

// Whether the value is a polynomial in `q^(1/2), t^(1/2)`.
//
// # Safety
// `h` must be a live handle and `out` a writable pointer.
enum CharvarStatus charvar_mixed_hodge_is_polynomial(const struct CharvarMixedHodge *h, bool *out);

// The value as text, e.g. `q + t + 4`. Free with `charvar_string_free`.
//
// # Safety
// `h` must be a live handle and `out` a writable pointer.
enum CharvarStatus charvar_mixed_hodge_text(const struct CharvarMixedHodge *h, char **out);

// Point count `q^(dim/2) MH(q, 1/q)` as text. `dim` must be even and the
// value a polynomial. Free with `charvar_string_free`.
//
// # Safety
// `h` must be a live handle and `out` a writable pointer.
enum CharvarStatus charvar_mixed_hodge_point_count(const struct CharvarMixedHodge *h,
                                                   uint32_t dim,
                                                   char **out);

// Reduces the trace of a word in `M1, M2, M3`, written as comma-separated
// letters with negatives for inverses (e.g. `"1,2,-3"`), to a polynomial
// in `x, y, z, a1..a4`.
// Free the result with `charvar_string_free`.
//
// # Safety
// `word` must be a NUL-terminated string and `out` a writable pointer.
enum CharvarStatus charvar_trace_word(const char *word, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHARVAR_H */
