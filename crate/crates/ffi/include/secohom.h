#ifndef SECOHOM_H
#define SECOHOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define SECOHOM_FLAVOR_ORDINARY 0

#define SECOHOM_FLAVOR_SECONDARY 1

/**
 * Result of every call.
 */
typedef enum SecohomStatus {
  SECOHOM_STATUS_OK = 0,
  /**
   * A checked property did not hold.
   */
  SECOHOM_STATUS_PROPERTY_FAILURE = 1,
  /**
   * Malformed input or a failed axiom.
   */
  SECOHOM_STATUS_INVALID_INPUT = 2,
  /**
   * Some cochain space exceeds the basis cap.
   */
  SECOHOM_STATUS_SIZE_CAP = 3,
  /**
   * A precondition of the computation failed.
   */
  SECOHOM_STATUS_PRECONDITION = 4,
  SECOHOM_STATUS_NULL_POINTER = 5,
  /**
   * The engine panicked; this is a bug.
   */
  SECOHOM_STATUS_PANIC = 6,
} SecohomStatus;

/**
 * A validated triple with its modules.
 */
typedef struct SecohomTriple SecohomTriple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and validates a spec document (`secohom-triple/1`). On success
 * `*out` receives a handle to release with [`secohom_triple_free`].
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SecohomStatus secohom_triple_from_json(const char *json, struct SecohomTriple **out);

/**
 * # Safety
 * `triple` must come from [`secohom_triple_from_json`] and not be used afterwards.
 */
void secohom_triple_free(struct SecohomTriple *triple);

/**
 * Sets the largest cochain space (in basis elements) a computation may build.
 *
 * # Safety
 * `triple` must be a live handle.
 */
enum SecohomStatus secohom_triple_set_max_basis(struct SecohomTriple *triple, size_t max_basis);

/**
 * `dim H^degree` in the given flavor. `module` may be NULL for the first module.
 *
 * # Safety
 * `triple` must be a live handle, `module` NULL or a NUL-terminated string,
 * `out` a valid pointer.
 */
enum SecohomStatus secohom_cohomology_dim(const struct SecohomTriple *triple,
                                          const char *module,
                                          uint32_t flavor_code,
                                          size_t degree,
                                          size_t *out);

/**
 * `dim ker Φ_degree` for the secondary-to-ordinary comparison map.
 *
 * # Safety
 * As for [`secohom_cohomology_dim`].
 */
enum SecohomStatus secohom_ker_phi_dim(const struct SecohomTriple *triple,
                                       const char *module,
                                       size_t degree,
                                       size_t *out);

/**
 * Hodge components of secondary `H^degree`: writes up to `capacity` values
 * `dim H^(k, degree-k)` (for `k = 1..=degree`, or `k = 0` in degree 0) into
 * `dims` and their count into `*len`. Fails with `PRECONDITION` when the count
 * exceeds `capacity`.
 *
 * # Safety
 * `dims` must have room for `capacity` values; other pointers as above.
 */
enum SecohomStatus secohom_hodge_dims(const struct SecohomTriple *triple,
                                      const char *module,
                                      size_t degree,
                                      size_t *dims,
                                      size_t capacity,
                                      size_t *len);

/**
 * `dim ker Φ2 = dim k[X]/<f'>` for `T ↦ f`; `-1` when infinite. `field` is
 * `"Q"` or `"GF(p)"`; NULL means `"Q"`.
 *
 * # Safety
 * `f` and (if non-NULL) `field` must be NUL-terminated strings; `out` valid.
 */
enum SecohomStatus secohom_poly_kerphi(const char *f, const char *field, int64_t *out);

/**
 * The JSON cohomology report for degrees `lo..=hi`, as printed by
 * `secohom cohomology --output json`.
 *
 * # Safety
 * `out` receives a string to release with [`secohom_string_free`]; other
 * pointers as above.
 */
enum SecohomStatus secohom_cohomology_report_json(const struct SecohomTriple *triple,
                                                  const char *module,
                                                  uint32_t flavor_code,
                                                  size_t lo,
                                                  size_t hi,
                                                  char **out);

/**
 * # Safety
 * `s` must come from this library, or be NULL.
 */
void secohom_string_free(char *s);

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into the library on this thread.
 */
const char *secohom_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SECOHOM_H */
