#ifndef ETF_H
#define ETF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EtfStatus {
  ETF_STATUS_OK = 0,
  ETF_STATUS_NULL_POINTER = 1,
  ETF_STATUS_INVALID_ARGUMENT = 2,
  ETF_STATUS_NOT_CONSTRUCTIBLE = 3,
  ETF_STATUS_NUMERICAL = 4,
  ETF_STATUS_FORMAT = 5,
  ETF_STATUS_PANIC = 6,
} EtfStatus;

typedef enum EtfVerdict {
  ETF_VERDICT_PLAUSIBLE = 0,
  ETF_VERDICT_DOES_NOT_EXIST = 1,
  ETF_VERDICT_TRIVIAL = 2,
} EtfVerdict;

// Opaque frame handle.
typedef struct EtfFrame EtfFrame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer
// stays valid until the next library call on the same thread.
const char *etf_last_error(void);

// Welch bound for `n` unit vectors in dimension `m`.
//
// # Safety
// `out` must be NULL or valid for a write.
enum EtfStatus etf_welch_bound(size_t m, size_t n, double *out);

// Real and complex existence verdicts for `(m, n)`.
//
// # Safety
// `real_verdict` and `complex_verdict` must be NULL or valid for writes.
enum EtfStatus etf_check(uint64_t m,
                         uint64_t n,
                         enum EtfVerdict *real_verdict,
                         enum EtfVerdict *complex_verdict);

// Builds the frame of a registry family from its table label, for
// example `"Paley(2)"` or `"Steiner BIBD(7,3,1)"`.
//
// # Safety
// `label` must be NULL or a NUL-terminated string; `out` must be NULL or
// valid for a write.
enum EtfStatus etf_construct(const char *label, struct EtfFrame **out);

// Parses a frame from its JSON form.
//
// # Safety
// `json` must be NULL or a NUL-terminated string; `out` must be NULL or
// valid for a write.
enum EtfStatus etf_frame_from_json(const char *json, struct EtfFrame **out);

// JSON form of a frame, or NULL on failure. Release with
// [`etf_string_free`].
//
// # Safety
// `frame` must be NULL or a live handle.
char *etf_frame_to_json(const struct EtfFrame *frame);

// # Safety
// `frame` must be NULL or a live handle; `m` and `n` must be NULL or valid
// for writes.
enum EtfStatus etf_frame_dims(const struct EtfFrame *frame, size_t *m, size_t *n);

// Entry `(i, j)` of the `m x n` synthesis matrix.
//
// # Safety
// `frame` must be NULL or a live handle; `re` and `im` must be NULL or
// valid for writes.
enum EtfStatus etf_frame_entry(const struct EtfFrame *frame,
                               size_t i,
                               size_t j,
                               double *re,
                               double *im);

// Checks unit norms, tightness and equiangularity at tolerance `tol`.
//
// # Safety
// `frame` must be NULL or a live handle; `is_etf` must be NULL or valid
// for a write; `coherence` may be NULL.
enum EtfStatus etf_verify(const struct EtfFrame *frame,
                          double tol,
                          bool *is_etf,
                          double *coherence);

// Naimark complement of a tight frame with `n > m`.
//
// # Safety
// `frame` must be NULL or a live handle; `out` must be NULL or valid for a
// write.
enum EtfStatus etf_naimark(const struct EtfFrame *frame, struct EtfFrame **out);

// # Safety
// `frame` must be NULL or a handle not yet freed.
void etf_frame_free(struct EtfFrame *frame);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void etf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ETF_H */
