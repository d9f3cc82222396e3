#ifndef BINACT_H
#define BINACT_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BinactStatus {
  BINACT_STATUS_OK = 0,
  BINACT_STATUS_NULL_POINTER = 1,
  BINACT_STATUS_INVALID_UTF8 = 2,
  /**
   * The input is not well-formed JSON for the expected record.
   */
  BINACT_STATUS_PARSE = 3,
  /**
   * The input parsed but violates the group or action axioms.
   */
  BINACT_STATUS_INVALID = 4,
  BINACT_STATUS_UNKNOWN_GROUP = 5,
  BINACT_STATUS_OUT_OF_RANGE = 6,
  BINACT_STATUS_BUDGET_EXCEEDED = 7,
  /**
   * A Rust panic was caught at the boundary.
   */
  BINACT_STATUS_INTERNAL = 8,
} BinactStatus;

/**
 * A validated binary action.
 */
typedef struct BinactAction BinactAction;

/**
 * A finite group with optional element labels.
 */
typedef struct BinactGroup BinactGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL after a success.
 * The pointer stays valid until the next call into this library.
 */
const char *binact_last_error_message(void);

/**
 * Looks up a catalog group such as `z4`, `s3` or `z2xz2`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BinactStatus binact_group_named(const char *name, struct BinactGroup **out);

/**
 * Parses a group file: `{"name": ..., "cayley": [[...]], "labels": [...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BinactStatus binact_group_from_json(const char *json, struct BinactGroup **out);

/**
 * Order of the group, or 0 for a NULL handle.
 *
 * # Safety
 * `group` must be NULL or a live handle.
 */
size_t binact_group_order(const struct BinactGroup *group);

/**
 * # Safety
 * `group` must be NULL or a handle not yet freed.
 */
void binact_group_free(struct BinactGroup *group);

/**
 * Parses and validates an action file. Group names resolve against the
 * built-in catalog, then as paths relative to the working directory.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BinactStatus binact_action_from_json(const char *json, struct BinactAction **out);

/**
 * # Safety
 * `action` must be NULL or a handle not yet freed.
 */
void binact_action_free(struct BinactAction *action);

/**
 * Carrier size, or 0 for a NULL handle.
 *
 * # Safety
 * `action` must be NULL or a live handle.
 */
size_t binact_action_carrier(const struct BinactAction *action);

/**
 * Writes `g(x, y)`.
 *
 * # Safety
 * `action` must be a live handle and `out` a valid pointer.
 */
enum BinactStatus binact_action_get(const struct BinactAction *action,
                                    size_t g,
                                    size_t x,
                                    size_t y,
                                    size_t *out);

/**
 * # Safety
 * `action` must be a live handle and `out` a valid pointer.
 */
enum BinactStatus binact_action_is_distributive(const struct BinactAction *action, bool *out);

/**
 * Least bi-invariant set containing `x`, as a bit mask over the carrier.
 *
 * # Safety
 * `action` must be a live handle and `out` a valid pointer.
 */
enum BinactStatus binact_action_minimal_bi_invariant(const struct BinactAction *action,
                                                     size_t x,
                                                     uint64_t *out);

/**
 * Orbit report as JSON; free the string with [`binact_string_free`].
 *
 * # Safety
 * `action` must be a live handle and `out` a valid pointer.
 */
enum BinactStatus binact_action_orbit_report_json(const struct BinactAction *action, char **out);

/**
 * The action as an action file in JSON.
 *
 * # Safety
 * `action` must be a live handle and `out` a valid pointer.
 */
enum BinactStatus binact_action_to_json(const struct BinactAction *action, char **out);

/**
 * Enumerates the actions of `group` on `carrier` points and writes
 * `{"summary": {...}, "actions": [...]}`. A `node_budget` of 0 keeps the
 * default.
 *
 * # Safety
 * `group` must be a live handle and `out` a valid pointer.
 */
enum BinactStatus binact_enumerate_json(const struct BinactGroup *group,
                                        size_t carrier,
                                        bool distributive,
                                        bool dedupe,
                                        uint64_t node_budget,
                                        char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void binact_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BINACT_H */
