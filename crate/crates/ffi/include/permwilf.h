#ifndef PERMWILF_H
#define PERMWILF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>

typedef enum PwStatus {
  PW_STATUS_OK = 0,
  PW_STATUS_NULL_ARGUMENT = 1,
  PW_STATUS_INVALID_UTF8 = 2,
  PW_STATUS_PARSE = 3,
  PW_STATUS_DOMAIN = 4,
  PW_STATUS_STRUCTURE = 5,
  PW_STATUS_PRECONDITION = 6,
  PW_STATUS_STALE = 7,
  PW_STATUS_FORMAT = 8,
  PW_STATUS_IO = 9,
  PW_STATUS_PANIC = 10,
} PwStatus;

/**
 * A finite permutation class.
 */
typedef struct PwClass PwClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Owned by the
 * library and valid until the next call on this thread.
 */
const char *pw_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void pw_string_free(char *s);

/**
 * Av(basis) through `max_size`. `basis` is a comma list and may be empty.
 *
 * # Safety
 * `basis` must be a NUL-terminated string and `out` writable.
 */
enum PwStatus pw_class_enumerate(const char *basis, size_t max_size, struct PwClass **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum PwStatus pw_class_from_json(const char *json, struct PwClass **out);

/**
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum PwStatus pw_class_to_json(const struct PwClass *c, char **out);

/**
 * # Safety
 * `c` must be null or a handle from this library, not yet freed.
 */
void pw_class_free(struct PwClass *c);

/**
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum PwStatus pw_class_max_size(const struct PwClass *c, size_t *out);

/**
 * Number of members of size `k`.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum PwStatus pw_class_level_count(const struct PwClass *c, size_t k, size_t *out);

/**
 * # Safety
 * `c` must be a live handle, `perm` a NUL-terminated string, `out` writable.
 */
enum PwStatus pw_class_contains(const struct PwClass *c, const char *perm, bool *out);

/**
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum PwStatus pw_is_uniquely_wilf(const struct PwClass *c, size_t horizon, bool *out);

/**
 * The Wilf-sequence through `horizon` as JSON.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum PwStatus pw_wilf_sequence_json(const struct PwClass *c, size_t horizon, char **out);

/**
 * Number of potential extensions by one level, counting whole orbits.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum PwStatus pw_potential_extension_count(const struct PwClass *c,
                                           bool require_monotone,
                                           size_t *out);

/**
 * Runs a search and returns its report as JSON.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum PwStatus pw_search_json(const struct PwClass *c,
                             size_t max_size,
                             size_t branch_cap,
                             char **out);

/**
 * LR word of a member of Av(213, 312).
 *
 * # Safety
 * `perm` must be a NUL-terminated string and `out` writable.
 */
enum PwStatus pw_wedge_encode(const char *perm, char **out);

/**
 * # Safety
 * `word` must be a NUL-terminated string and `out` writable.
 */
enum PwStatus pw_wedge_decode(const char *word, char **out);

/**
 * Grid class membership; `filled` selects the filled grid class.
 *
 * # Safety
 * `peg` and `perm` must be NUL-terminated strings and `out` writable.
 */
enum PwStatus pw_grid_contains(const char *peg, const char *perm, bool filled, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERMWILF_H */
