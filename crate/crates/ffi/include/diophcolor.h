#ifndef DIOPHCOLOR_H
#define DIOPHCOLOR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DcStatus {
  DC_STATUS_OK = 0,
  DC_STATUS_NULL_POINTER = 1,
  DC_STATUS_NOT_PRIME = 2,
  DC_STATUS_INVALID_SURD = 3,
  DC_STATUS_RATIONAL_INPUT = 4,
  DC_STATUS_OUT_OF_RANGE = 5,
  DC_STATUS_NOT_UNIMODULAR = 6,
  DC_STATUS_PRECONDITION = 7,
  DC_STATUS_BUDGET_EXCEEDED = 8,
  DC_STATUS_BELOW_THRESHOLD = 9,
  DC_STATUS_INTERNAL = 10,
  DC_STATUS_PANIC = 11,
} DcStatus;

// An eventually periodic continued fraction.
typedef struct DcCf DcCf;

// A quadratic surd `(P + sqrt D)/Q`.
typedef struct DcSurd DcSurd;

// The records of a witness sweep.
typedef struct DcSweep DcSweep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null.
//
// The pointer stays valid until the next call into this library on the
// same thread. Do not free it.
const char *dc_last_error(void);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void dc_string_free(char *s);

// Builds `(p + sqrt d)/q` in normal form.
//
// # Safety
// `out` must be valid for a pointer write.
enum DcStatus dc_surd_new(int64_t p, int64_t d, int64_t q, struct DcSurd **out);

// Rendering such as `(-1 + sqrt(2))/1`. Free with [`dc_string_free`].
//
// # Safety
// `s` must be null or a live handle from [`dc_surd_new`].
char *dc_surd_to_string(const struct DcSurd *s);

// # Safety
// `s` must be null or a handle from [`dc_surd_new`] not yet freed.
void dc_surd_free(struct DcSurd *s);

// Expands an irrational surd in `(0, 1)`.
//
// # Safety
// `x` must be a live surd handle and `out` valid for a pointer write.
enum DcStatus dc_cf_expand(const struct DcSurd *x, struct DcCf **out);

// Builds an expansion from its digits; the period must be nonempty.
//
// # Safety
// `pre` and `per` must point to `pre_len` and `per_len` readable values
// (either may be null when its length is 0). `out` must be valid for a
// pointer write.
enum DcStatus dc_cf_new(const uint64_t *pre,
                        size_t pre_len,
                        const uint64_t *per,
                        size_t per_len,
                        struct DcCf **out);

// Length of the preperiod; 0 for a null handle.
//
// # Safety
// `cf` must be null or a live expansion handle.
size_t dc_cf_preperiod_len(const struct DcCf *cf);

// Length of the period; 0 for a null handle.
//
// # Safety
// `cf` must be null or a live expansion handle.
size_t dc_cf_period_len(const struct DcCf *cf);

// Digit `a_k`, counting from `k = 1`; 0 for a null handle or `k = 0`.
//
// # Safety
// `cf` must be null or a live expansion handle.
uint64_t dc_cf_digit(const struct DcCf *cf, size_t k);

// # Safety
// `cf` must be null or an expansion handle not yet freed.
void dc_cf_free(struct DcCf *cf);

// `|n|_p = num / den`, with `num = 0` and `den = 1` for `n = 0`.
//
// # Safety
// `num` and `den` must be valid for writes.
enum DcStatus dc_padic_abs(int64_t n, uint64_t p, uint32_t *num, uint64_t *den);

// Chromatic number of the Cayley graph of `gens` on `{0, ..., m}`.
// A `budget` of 0 uses the default search budget.
//
// # Safety
// `gens` must point to `len` readable values and `out` be valid for a write.
enum DcStatus dc_chromatic_number(const uint64_t *gens,
                                  size_t len,
                                  uint64_t m,
                                  uint64_t budget,
                                  uint64_t *out);

// Witness records for `N = 2, 4, ..., <= nmax`. `threads = 0` means one.
//
// # Safety
// `cf` must be a live expansion handle and `out` valid for a pointer write.
enum DcStatus dc_witness_sweep(const struct DcCf *cf,
                               uint64_t p,
                               uint64_t nmax,
                               size_t threads,
                               struct DcSweep **out);

// Number of records; 0 for a null handle.
//
// # Safety
// `s` must be null or a live sweep handle.
size_t dc_sweep_len(const struct DcSweep *s);

// Whether every record stays below the bound.
//
// # Safety
// `s` must be null or a live sweep handle.
bool dc_sweep_holds(const struct DcSweep *s);

// Record `i` as a JSON object, or null when out of range.
// Free with [`dc_string_free`].
//
// # Safety
// `s` must be null or a live sweep handle.
char *dc_sweep_record_json(const struct DcSweep *s, size_t i);

// Summary line as JSON. Free with [`dc_string_free`].
//
// # Safety
// `s` must be null or a live sweep handle.
char *dc_sweep_summary_json(const struct DcSweep *s);

// # Safety
// `s` must be null or a sweep handle not yet freed.
void dc_sweep_free(struct DcSweep *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIOPHCOLOR_H */
