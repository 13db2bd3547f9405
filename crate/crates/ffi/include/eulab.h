#ifndef EULAB_H
#define EULAB_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EulabStatus {
  EULAB_STATUS_OK = 0,
  EULAB_STATUS_INTERNAL = 1,
  EULAB_STATUS_INVALID_PARAMETERS = 2,
  EULAB_STATUS_INVALID_MATROID = 3,
  EULAB_STATUS_SIZE_LIMIT = 4,
  EULAB_STATUS_NULL_POINTER = 5,
} EulabStatus;

typedef enum EulabAlgorithm {
  EULAB_ALGORITHM_CLOSED = 0,
  EULAB_ALGORITHM_RECURSION_FLAT = 1,
  EULAB_ALGORITHM_RECURSION_LEX = 2,
  EULAB_ALGORITHM_CHOW = 3,
  EULAB_ALGORITHM_DIVISORIAL = 4,
} EulabAlgorithm;

typedef enum EulabInvariant {
  EULAB_INVARIANT_MEN_VECTOR = 0,
  EULAB_INVARIANT_TUTTE = 1,
  EULAB_INVARIANT_CHARPOLY = 2,
  EULAB_INVARIANT_GINV = 3,
  EULAB_INVARIANT_CATENARY = 4,
} EulabInvariant;

/**
 * Opaque matroid handle.
 */
typedef struct EulabMatroid EulabMatroid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the next call.
 */
const char *eulab_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library that has not been freed.
 */
void eulab_string_free(char *s);

/**
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum EulabStatus eulab_matroid_uniform(size_t rank, size_t elements, struct EulabMatroid **out);

/**
 * Bases are bitmasks over the ground set `0..elements`.
 *
 * # Safety
 * `bases` must point to `count` readable values and `out` must be valid for writing one pointer.
 */
enum EulabStatus eulab_matroid_from_bases(size_t elements,
                                          const uint32_t *bases,
                                          size_t count,
                                          struct EulabMatroid **out);

/**
 * Accepts the same JSON description as the command-line tool.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` must be valid for writing one pointer.
 */
enum EulabStatus eulab_matroid_from_json(const char *json, struct EulabMatroid **out);

/**
 * # Safety
 * `m` must be NULL or a handle from this library that has not been freed.
 */
void eulab_matroid_free(struct EulabMatroid *m);

/**
 * # Safety
 * `m` must be a live handle and `out` valid for writing.
 */
enum EulabStatus eulab_matroid_num_elements(const struct EulabMatroid *m, size_t *out);

/**
 * # Safety
 * `m` must be a live handle and `out` valid for writing.
 */
enum EulabStatus eulab_matroid_rank(const struct EulabMatroid *m, size_t *out);

/**
 * `A(a_1, …, a_n)` as a decimal string.
 *
 * # Safety
 * `a` must point to `len` readable values and `out` must be valid for writing one pointer.
 */
enum EulabStatus eulab_mixed_eulerian(const uint32_t *a, size_t len, char **out);

/**
 * `A_M(a)` by the chosen evaluator, as a decimal string.
 *
 * # Safety
 * `m` must be a live handle, `a` must point to `len` readable values and `out` must be valid for writing one pointer.
 */
enum EulabStatus eulab_matroidal(const struct EulabMatroid *m,
                                 enum EulabAlgorithm algorithm,
                                 const uint32_t *a,
                                 size_t len,
                                 char **out);

/**
 * Absolute value of the coefficient of `q^l` in the reduced characteristic polynomial.
 *
 * # Safety
 * `m` must be a live handle and `out` valid for writing.
 */
enum EulabStatus eulab_gamma(const struct EulabMatroid *m, int64_t l, uint64_t *out);

/**
 * The same JSON document the command-line tool prints for this invariant.
 *
 * # Safety
 * `m` must be a live handle and `out` must be valid for writing one pointer.
 */
enum EulabStatus eulab_matroid_invariant_json(const struct EulabMatroid *m,
                                              enum EulabInvariant invariant,
                                              char **out);

/**
 * Canonical JSON description of the matroid by its bases.
 *
 * # Safety
 * `m` must be a live handle and `out` must be valid for writing one pointer.
 */
enum EulabStatus eulab_matroid_to_json(const struct EulabMatroid *m, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EULAB_H */
