#ifndef PHASELAB_H
#define PHASELAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PlStatus {
  PL_STATUS_OK = 0,
  PL_STATUS_NULL_POINTER = 1,
  PL_STATUS_INVALID_UTF8 = 2,
  PL_STATUS_PARSE_ERROR = 3,
  PL_STATUS_INVALID_INPUT = 4,
  PL_STATUS_GUARD_EXCEEDED = 5,
  PL_STATUS_PANIC = 6,
} PlStatus;

/**
 * Opaque subspace arrangement handle.
 */
typedef struct PlArrangement PlArrangement;

/**
 * Opaque frame handle.
 */
typedef struct PlFrame PlFrame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next failing call on the same thread; do not free.
 */
const char *pl_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library, freed once.
 */
void pl_string_free(char *s);

/**
 * Parses a frame file. The backend follows the file's `scalars` field.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PlStatus pl_frame_from_json(const char *json, struct PlFrame **out);

/**
 * # Safety
 * `frame` must be null or a handle from [`pl_frame_from_json`], freed once.
 */
void pl_frame_free(struct PlFrame *frame);

/**
 * Number of vectors and ambient dimension.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PlStatus pl_frame_shape(const struct PlFrame *frame, size_t *len, size_t *dim);

/**
 * Every `d`-subset is a basis.
 *
 * # Safety
 * `frame` must be a live handle and `out` a valid pointer.
 */
enum PlStatus pl_frame_full_spark(const struct PlFrame *frame, bool *out);

/**
 * Complement property by subset enumeration.
 *
 * # Safety
 * `frame` must be a live handle and `out` a valid pointer.
 */
enum PlStatus pl_frame_complement_property(const struct PlFrame *frame, bool *out);

/**
 * Phase retrieval (complement property, with the `2d − 1` count shortcut).
 *
 * # Safety
 * `frame` must be a live handle and `out` a valid pointer.
 */
enum PlStatus pl_frame_phase_retrieval(const struct PlFrame *frame, bool *out);

/**
 * Frame operator is a multiple of the identity.
 *
 * # Safety
 * `frame` must be a live handle and `out` a valid pointer.
 */
enum PlStatus pl_frame_is_tight(const struct PlFrame *frame, bool *out);

/**
 * Nonnegative weights making the frame tight exist.
 *
 * # Safety
 * `frame` must be a live handle and `out` a valid pointer.
 */
enum PlStatus pl_frame_scalable(const struct PlFrame *frame, bool *out);

/**
 * Parses an arrangement file. The backend follows the file's `scalars` field.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PlStatus pl_arrangement_from_json(const char *json, struct PlArrangement **out);

/**
 * # Safety
 * `arrangement` must be null or a handle from [`pl_arrangement_from_json`], freed once.
 */
void pl_arrangement_free(struct PlArrangement *arrangement);

/**
 * Rank of `{P_i x}` for `x` given as comma-separated scalars such as `"1,1,-1/2"`.
 * `deficient` is true when the rank is below the dimension, which proves
 * the arrangement fails phase retrieval.
 *
 * # Safety
 * `arrangement` must be a live handle, `x` a NUL-terminated string and the
 * outputs valid pointers.
 */
enum PlStatus pl_arrangement_edidin_verify(const struct PlArrangement *arrangement,
                                           const char *x,
                                           bool *deficient,
                                           size_t *rank);

/**
 * Seeded numerical search for a deficient `{P_i x}`. `witness_found` is
 * set only for exactly verified witnesses; `min_sigma` is the smallest
 * singular value reached.
 *
 * # Safety
 * `arrangement` must be a live handle and the outputs valid pointers.
 */
enum PlStatus pl_arrangement_edidin_search(const struct PlArrangement *arrangement,
                                           size_t restarts,
                                           uint64_t seed,
                                           bool *witness_found,
                                           double *min_sigma);

/**
 * Number of distinct real roots of `f₀(1, t)` for the built-in degree-10
 * eliminant of the six hyperplanes in `R⁴`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PlStatus pl_f0_real_root_count(size_t *out);

/**
 * Runs one CLI command in-process. `args` are the arguments after the
 * program name; `stdin_text` may be null. The JSON report lines and the
 * human summary are returned through `out_stdout` and `out_stderr`
 * (either may be null if not wanted) and must be freed with
 * [`pl_string_free`]. `exit_code` receives the CLI exit code.
 *
 * # Safety
 * `args` must point to `argc` NUL-terminated strings; other pointers must
 * be valid or null where allowed.
 */
enum PlStatus pl_run(const char *const *args,
                     size_t argc,
                     const char *stdin_text,
                     int32_t *exit_code,
                     char **out_stdout,
                     char **out_stderr);

/**
 * Library version as a static string; do not free.
 */
const char *pl_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PHASELAB_H */
