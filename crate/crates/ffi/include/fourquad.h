#ifndef FOURQUAD_H
#define FOURQUAD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FqClassification {
  FQ_CLASSIFICATION_ALLOWABLE = 0,
  FQ_CLASSIFICATION_SEMI_ALLOWABLE = 1,
  FQ_CLASSIFICATION_REJECTED = 2,
} FqClassification;

typedef enum FqStatus {
  FQ_STATUS_OK = 0,
  FQ_STATUS_FAILED = 1,
  FQ_STATUS_UNREADABLE_INPUT = 2,
  FQ_STATUS_INVALID_PRIME = 3,
  FQ_STATUS_CAP_EXCEEDED = 4,
  FQ_STATUS_NULL_POINTER = 5,
  FQ_STATUS_INVALID_UTF8 = 6,
  FQ_STATUS_PANIC = 7,
} FqStatus;

/**
 * A closed group with its character table.
 */
typedef struct FqGroup FqGroup;

/**
 * The result of a full run.
 */
typedef struct FqReport FqReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or an empty string.
 */
const char *fq_last_error(void);

/**
 * Loads a catalog group by name, or a group file by path, and closes it.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FqStatus fq_group_load(const char *spec, struct FqGroup **out);

/**
 * # Safety
 * `group` must come from `fq_group_load` and not be used afterwards.
 */
void fq_group_free(struct FqGroup *group);

/**
 * Order of the group.
 *
 * # Safety
 * `group` must be a live handle and `out` a valid pointer.
 */
enum FqStatus fq_group_order(const struct FqGroup *group, size_t *out);

/**
 * Number of conjugacy classes.
 *
 * # Safety
 * `group` must be a live handle and `out` a valid pointer.
 */
enum FqStatus fq_group_class_count(const struct FqGroup *group, size_t *out);

/**
 * Order of the scalar subgroup.
 *
 * # Safety
 * `group` must be a live handle and `out` a valid pointer.
 */
enum FqStatus fq_group_scalar_order(const struct FqGroup *group, size_t *out);

/**
 * Sets `*pass` to 1 if the group passes the Lefschetz screen, else 0.
 *
 * # Safety
 * `group` must be a live handle and `pass` a valid pointer.
 */
enum FqStatus fq_lefschetz(const struct FqGroup *group, int32_t *pass);

/**
 * Runs every stage at the given prime and seed with random parameters.
 *
 * # Safety
 * `group` must be a live handle and `out` a valid pointer.
 */
enum FqStatus fq_full(const struct FqGroup *group,
                      uint64_t prime,
                      uint64_t seed,
                      struct FqReport **out);

/**
 * # Safety
 * `report` must come from `fq_full` and not be used afterwards.
 */
void fq_report_free(struct FqReport *report);

/**
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum FqStatus fq_report_classification(const struct FqReport *report, enum FqClassification *out);

/**
 * Name of the stage that decided the classification; owned by `report`.
 *
 * # Safety
 * `report` must be a live handle or null.
 */
const char *fq_report_decided_by(const struct FqReport *report);

/**
 * The report as JSON; owned by `report`.
 *
 * # Safety
 * `report` must be a live handle or null.
 */
const char *fq_report_json(const struct FqReport *report);

/**
 * Number of singular points found by the census, 0 when no census ran.
 *
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum FqStatus fq_report_singular_points(const struct FqReport *report, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FOURQUAD_H */
