#ifndef TAILSURF_H
#define TAILSURF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TsDecoder {
  TS_DECODER_EXACT_Y = 0,
  TS_DECODER_CONCATENATED = 1,
  TS_DECODER_MPS = 2,
  TS_DECODER_BRUTE_FORCE = 3,
} TsDecoder;

typedef enum TsLayout {
  TS_LAYOUT_STANDARD = 0,
  TS_LAYOUT_ROTATED = 1,
} TsLayout;

/*
 Result of every fallible call.
 */
typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_POINTER = 1,
  TS_STATUS_INVALID_ARGUMENT = 2,
  /*
   The syndrome cannot arise from the errors the decoder handles.
   */
  TS_STATUS_UNATTAINABLE = 3,
  TS_STATUS_NUMERICAL = 4,
  TS_STATUS_INTERNAL = 5,
  TS_STATUS_PANIC = 6,
} TsStatus;

/*
 Opaque code handle.
 */
typedef struct TsCode TsCode;

/*
 Distances and base-2 logarithms of minimum-weight logical counts under
 pure X, Y and Z noise.
 */
typedef struct TsPureSummary {
  size_t d_x;
  size_t d_y;
  size_t d_z;
  uint32_t c_x_log2;
  uint32_t c_y_log2;
  uint32_t c_z_log2;
} TsPureSummary;

/*
 Monte Carlo failure-rate estimate.
 */
typedef struct TsEstimate {
  uint64_t trials;
  uint64_t failures;
  uint64_t decoder_errors;
  double rate;
  double stderr;
} TsEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *ts_version(void);

/*
 Message of the last failed call on this thread, or NULL. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *ts_last_error_message(void);

/*
 Builds a `j` x `k` code and stores a new handle in `*out_code`.

 # Safety
 `out_code` must be NULL or valid for writes.
 */
enum TsStatus ts_code_new(enum TsLayout layout, size_t j, size_t k, struct TsCode **out_code);

/*
 Releases a handle. NULL is ignored.

 # Safety
 `code` must be NULL or a handle from [`ts_code_new`] not yet freed.
 */
void ts_code_free(struct TsCode *code);

/*
 Number of physical qubits and of stabilizer checks.

 # Safety
 `code` must be a live handle; the out pointers must be valid for writes.
 */
enum TsStatus ts_code_size(const struct TsCode *code, size_t *out_qubits, size_t *out_checks);

/*
 Distances and logical counts under pure X, Y and Z noise.

 # Safety
 `code` must be a live handle; `out_summary` must be valid for writes.
 */
enum TsStatus ts_code_pure_summary(const struct TsCode *code, struct TsPureSummary *out_summary);

/*
 Hashing-bound threshold for bias `eta` (pass `INFINITY` for pure Y).

 # Safety
 `out_p` must be valid for writes.
 */
enum TsStatus ts_hashing_bound(double eta, double *out_p);

/*
 Decodes one syndrome. `syndrome` holds `syndrome_len` bytes, each 0 or 1,
 in check order. On success `out_recovery` receives `n` bytes with
 0 = I, 1 = X, 2 = Y, 3 = Z per qubit; `recovery_len` must be at least `n`.
 `chi` is the MPS bond dimension (0 for other decoders).

 # Safety
 `code` must be a live handle; buffers must be valid for their lengths.
 */
enum TsStatus ts_decode(const struct TsCode *code,
                        double p,
                        double eta,
                        enum TsDecoder decoder,
                        size_t chi,
                        const uint8_t *syndrome,
                        size_t syndrome_len,
                        uint8_t *out_recovery,
                        size_t recovery_len);

/*
 Monte Carlo logical failure rate over `trials` seeded trials.

 # Safety
 `code` must be a live handle; `out_estimate` must be valid for writes.
 */
enum TsStatus ts_estimate_failure_rate(const struct TsCode *code,
                                       double p,
                                       double eta,
                                       enum TsDecoder decoder,
                                       size_t chi,
                                       uint64_t trials,
                                       uint64_t seed,
                                       struct TsEstimate *out_estimate);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAILSURF_H */
