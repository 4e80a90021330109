#ifndef ZSDELTA_H
#define ZSDELTA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum ZsStatus {
  ZS_STATUS_OK = 0,
  ZS_STATUS_NULL_POINTER = 1,
  ZS_STATUS_INVALID_UTF8 = 2,
  ZS_STATUS_PARSE = 3,
  ZS_STATUS_INVALID_INPUT = 4,
  ZS_STATUS_BUDGET_EXCEEDED = 5,
  ZS_STATUS_INCONSISTENT = 6,
  ZS_STATUS_OUT_OF_RANGE = 7,
  ZS_STATUS_PANIC = 8,
} ZsStatus;

/**
 * The minimal zero-sum sequences over a support set.
 */
typedef struct ZsAtoms ZsAtoms;

/**
 * A finite abelian group.
 */
typedef struct ZsGroup ZsGroup;

/**
 * A set of distinct nonzero group elements.
 */
typedef struct ZsSupport ZsSupport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` as a
 * NUL-terminated string, truncating to `len - 1` bytes. Returns the full
 * message length without the terminator; 0 means no error.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t zs_last_error(char *buf, size_t len);

/**
 * Parses a group such as `"C2^2xC4"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out_group` must be writable.
 */
enum ZsStatus zs_group_parse(const char *text, struct ZsGroup **out_group);

/**
 * # Safety
 * `group` must be null or a handle from [`zs_group_parse`] not yet freed.
 */
void zs_group_free(struct ZsGroup *group);

/**
 * # Safety
 * `group` must be a live handle; `out_order` must be writable.
 */
enum ZsStatus zs_group_order(const struct ZsGroup *group, uint64_t *out_order);

/**
 * `max Δ*(G)` from a sweep of the minimal non-half-factorial subsets.
 * `budget` caps the number of subsets visited.
 *
 * # Safety
 * `group` must be a live handle; `out_max` must be writable.
 */
enum ZsStatus zs_group_max_delta_star(const struct ZsGroup *group,
                                      uint64_t budget,
                                      uint64_t *out_max);

/**
 * Parses a subset such as `"(1,0);(0,1)"` of `group`. The support keeps its
 * own copy of the group.
 *
 * # Safety
 * `group` must be a live handle, `text` NUL-terminated, `out_support` writable.
 */
enum ZsStatus zs_support_parse(const struct ZsGroup *group,
                               const char *text,
                               struct ZsSupport **out_support);

/**
 * # Safety
 * `support` must be null or a live handle.
 */
void zs_support_free(struct ZsSupport *support);

/**
 * # Safety
 * `support` must be a live handle.
 */
size_t zs_support_len(const struct ZsSupport *support);

/**
 * Enumerates the atoms over `support`. `budget` caps `Π(ord(g)+1)`.
 *
 * # Safety
 * `support` must be a live handle; `out_atoms` must be writable.
 */
enum ZsStatus zs_atoms_enumerate(const struct ZsSupport *support,
                                 uint64_t budget,
                                 struct ZsAtoms **out_atoms);

/**
 * # Safety
 * `atoms` must be null or a live handle.
 */
void zs_atoms_free(struct ZsAtoms *atoms);

/**
 * # Safety
 * `atoms` must be a live handle.
 */
size_t zs_atoms_count(const struct ZsAtoms *atoms);

/**
 * Copies the exponents of atom `index` into `buf`, one per support element.
 * `buf_len` must be at least [`zs_support_len`].
 *
 * # Safety
 * `atoms` must be a live handle and `buf` valid for `buf_len` elements.
 */
enum ZsStatus zs_atoms_exponents(const struct ZsAtoms *atoms,
                                 size_t index,
                                 uint32_t *buf,
                                 size_t buf_len);

/**
 * `D(G₀)`, the largest atom length.
 *
 * # Safety
 * `atoms` must be a live handle; `out_d` must be writable.
 */
enum ZsStatus zs_atoms_davenport(const struct ZsAtoms *atoms, uint64_t *out_d);

/**
 * `min Δ(G₀)`; 0 for a half-factorial set.
 *
 * # Safety
 * `atoms` must be a live handle; `out_min_delta` must be writable.
 */
enum ZsStatus zs_atoms_min_delta(const struct ZsAtoms *atoms, uint64_t *out_min_delta);

/**
 * Half-factoriality, decided by cross numbers and by the lattice; a
 * disagreement is reported as [`ZsStatus::Inconsistent`].
 *
 * # Safety
 * `atoms` must be a live handle; `out_hf` must be writable.
 */
enum ZsStatus zs_atoms_is_half_factorial(const struct ZsAtoms *atoms, bool *out_hf);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZSDELTA_H */
