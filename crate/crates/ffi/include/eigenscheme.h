#ifndef EIGENSCHEME_H
#define EIGENSCHEME_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum EsStatus {
  ES_STATUS_OK = 0,
  ES_STATUS_NULL_POINTER = 1,
  ES_STATUS_INVALID_UTF8 = 2,
  ES_STATUS_INVALID_INPUT = 3,
  ES_STATUS_POSITIVE_DIMENSIONAL = 4,
  ES_STATUS_INDETERMINATE = 5,
  ES_STATUS_NOT_DECOMPOSABLE = 6,
  ES_STATUS_NUMERIC = 7,
  ES_STATUS_UNSUPPORTED = 8,
  ES_STATUS_PANIC = 9,
} EsStatus;

/**
 * Opaque tensor handle.
 */
typedef struct EsTensor EsTensor;

/**
 * Opaque handle for a tuple of 2x2 minors.
 */
typedef struct EsTuple EsTuple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty if none. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *es_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void es_string_free(char *s);

/**
 * Number of eigenpoints of a general tensor. Fails if it exceeds 64 bits.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EsStatus es_count(size_t n, uint32_t d, uint64_t *out);

/**
 * Parses a tensor from JSON (`{"n","d","kind","forms"}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum EsStatus es_tensor_from_json(const char *json, struct EsTensor **out);

/**
 * Random tensor with integer coefficients in `[-bound, bound]`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EsStatus es_tensor_random(size_t n,
                               uint32_t d,
                               bool symmetric,
                               uint64_t seed,
                               int64_t bound,
                               struct EsTensor **out);

/**
 * # Safety
 * `t` must be null or a live handle from this library.
 */
void es_tensor_free(struct EsTensor *t);

/**
 * # Safety
 * `t` must be a live handle; `out` must be valid for writes.
 */
enum EsStatus es_tensor_to_json(const struct EsTensor *t, char **out);

/**
 * The tuple of 2x2 minors of a tensor.
 *
 * # Safety
 * `t` must be a live handle; `out` must be valid for writes.
 */
enum EsStatus es_tensor_generators(const struct EsTensor *t, struct EsTuple **out);

/**
 * Tests whether a point (JSON coordinate array) is an eigenpoint; floating
 * points are compared with `tol`.
 *
 * # Safety
 * `t` must be a live handle, `point_json` a NUL-terminated string and `out`
 * valid for writes.
 */
enum EsStatus es_tensor_is_eigenpoint(const struct EsTensor *t,
                                      const char *point_json,
                                      double tol,
                                      bool *out);

/**
 * Eigenpoints of a tensor with `n` equal to 1 or 2, as JSON.
 *
 * # Safety
 * `t` must be a live handle; `out` must be valid for writes.
 */
enum EsStatus es_tensor_solve(const struct EsTensor *t, double tol, char **out);

/**
 * Parses a minor tuple from JSON (`{"n","d","entries"}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum EsStatus es_tuple_from_json(const char *json, struct EsTuple **out);

/**
 * # Safety
 * `f` must be null or a live handle from this library.
 */
void es_tuple_free(struct EsTuple *f);

/**
 * # Safety
 * `f` must be a live handle; `out` must be valid for writes.
 */
enum EsStatus es_tuple_to_json(const struct EsTuple *f, char **out);

/**
 * Checks the Koszul and de Rham identities and recovers a tensor:
 * `{"koszul", "derham", "recovered"}`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be valid for writes.
 */
enum EsStatus es_tuple_characterize(const struct EsTuple *f, bool symmetric, char **out);

/**
 * Predicted and actual Hilbert function for degrees `0..=window`; a window of
 * zero selects the default range.
 *
 * # Safety
 * `f` must be a live handle; `out` must be valid for writes.
 */
enum EsStatus es_tuple_hilbert(const struct EsTuple *f, uint32_t window, char **out);

/**
 * Eigenpoints of the Fermat tensor, as JSON.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EsStatus es_fermat_eigenpoints(size_t n, uint32_t d, char **out);

/**
 * Interpolates a tensor of order `d` through points given as JSON.
 *
 * # Safety
 * `points_json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum EsStatus es_fit_points(const char *points_json, uint32_t d, bool symmetric, char **out);

/**
 * Lines through `d + 1` or more of the points, and lines through exactly `d`.
 *
 * # Safety
 * `points_json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum EsStatus es_collinearity_report(const char *points_json, uint32_t d, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EIGENSCHEME_H */
