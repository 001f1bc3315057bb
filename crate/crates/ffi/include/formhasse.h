#ifndef FORMHASSE_H
#define FORMHASSE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FhStatus {
  FH_STATUS_OK = 0,
  FH_STATUS_NULL_POINTER = 1,
  FH_STATUS_INVALID_UTF8 = 2,
  FH_STATUS_PARSE = 3,
  FH_STATUS_FIELD_MISMATCH = 4,
  FH_STATUS_DIMENSION_MISMATCH = 5,
  FH_STATUS_INVALID_ARGUMENT = 6,
  /**
   * A search finished without a result; not an error.
   */
  FH_STATUS_NOT_FOUND = 7,
  FH_STATUS_INTERNAL = 8,
} FhStatus;

/**
 * Opaque diagonal quadratic form.
 */
typedef struct FhForm FhForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `entries` such as `"1,1,1,-7"` over `field` (`"Q"` or `"K5"`) into `*out`.
 *
 * # Safety
 * `field` and `entries` must be NUL-terminated strings; `out` must be writable.
 */
enum FhStatus fh_form_parse(const char *field, const char *entries, struct FhForm **out);

/**
 * # Safety
 * `form` must come from `fh_form_parse` and not be freed twice; null is ignored.
 */
void fh_form_free(struct FhForm *form);

/**
 * # Safety
 * `form` must be a live handle and `out` writable.
 */
enum FhStatus fh_form_dim(const struct FhForm *form, size_t *out);

/**
 * Sets `*out` to 1 when the forms are equivalent over their common field, else 0.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` writable.
 */
enum FhStatus fh_equivalent(const struct FhForm *a, const struct FhForm *b, int32_t *out);

/**
 * Ramification set of the Hasse invariant as a JSON array of place names.
 *
 * # Safety
 * `form` must be a live handle and `out` writable.
 */
enum FhStatus fh_hasse_json(const struct FhForm *form, char **out);

/**
 * Hilbert symbol over Q of the rationals `a`, `b` (e.g. `"-3/4"`) at `place`, which is
 * `"real"` or a prime. Writes +1 or -1.
 *
 * # Safety
 * String arguments must be NUL-terminated and `out` writable.
 */
enum FhStatus fh_hilbert_q(const char *a, const char *b, const char *place, int8_t *out);

/**
 * Sets `*out` to 1 when the rational prime `q` is in the golden prime set.
 *
 * # Safety
 * `out` must be writable.
 */
enum FhStatus fh_in_prime_set_p(uint64_t q, int32_t *out);

/**
 * Searches for `p` with `p^t source p = target` over Q. On success `*out` holds the
 * witness JSON; `NotFound` leaves `*out` null.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum FhStatus fh_find_witness_json(const struct FhForm *source,
                                   const struct FhForm *target,
                                   uint64_t bound,
                                   char **out);

/**
 * Verification report JSON for one section, or for all sections when `section` is null.
 *
 * # Safety
 * `section` must be null or NUL-terminated; `out` writable.
 */
enum FhStatus fh_verify_paper_json(const char *section, uint64_t dmax, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice; null is ignored.
 */
void fh_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer stays valid
 * until the next failing call on the same thread.
 */
const char *fh_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FORMHASSE_H */
