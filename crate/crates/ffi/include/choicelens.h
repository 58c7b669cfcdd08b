#ifndef CHOICELENS_H
#define CHOICELENS_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of an FFI call.
 */
typedef enum ClStatus {
  CL_STATUS_OK = 0,
  CL_STATUS_NULL_ARGUMENT = 1,
  CL_STATUS_INVALID_UTF8 = 2,
  CL_STATUS_INVALID_DATASET = 3,
  CL_STATUS_BOUND_EXCEEDED = 4,
  CL_STATUS_UNKNOWN_MODEL = 5,
  CL_STATUS_NOT_IN_MODEL = 6,
  CL_STATUS_INTERNAL = 7,
} ClStatus;

/**
 * Opaque handle to a parsed choice dataset.
 */
typedef struct ClDataset ClDataset;

/**
 * Parses dataset text into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum ClStatus cl_dataset_parse(const char *text, struct ClDataset **out);

/**
 * Reads and parses a dataset file into a new handle stored in `*out`.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum ClStatus cl_dataset_load(const char *path, struct ClDataset **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `dataset` must come from this library and not be used afterwards.
 */
void cl_dataset_free(struct ClDataset *dataset);

/**
 * Number of items in the ground set, or 0 for a null handle.
 *
 * # Safety
 * `dataset` must be null or a live handle.
 */
size_t cl_dataset_item_count(const struct ClDataset *dataset);

/**
 * Classifies the dataset and stores a JSON object keyed by model name in
 * `*out_json`. `models` is a comma-separated list, or null for all models.
 *
 * # Safety
 * `dataset` must be a live handle; `models` null or NUL-terminated;
 * `out_json` writable.
 */
enum ClStatus cl_classify_json(const struct ClDataset *dataset,
                               const char *models,
                               char **out_json);

/**
 * Elicits a verified explanation for `model` and stores it as JSON in
 * `*out_json`. Returns `NotInModel` when the dataset is outside the model.
 *
 * # Safety
 * `dataset` must be a live handle; `model` NUL-terminated; `out_json` writable.
 */
enum ClStatus cl_elicit_json(const struct ClDataset *dataset, const char *model, char **out_json);

/**
 * Decides a single model, storing 1 in `*out_holds` if the dataset is in it
 * and 0 otherwise.
 *
 * # Safety
 * `dataset` must be a live handle; `model` NUL-terminated; `out_holds` writable.
 */
enum ClStatus cl_decide(const struct ClDataset *dataset, const char *model, int32_t *out_holds);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void cl_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *cl_last_error(void);

#endif  /* CHOICELENS_H */
