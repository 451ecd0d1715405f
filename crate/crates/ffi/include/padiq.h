/* C interface for the padiq ultrametric analysis toolkit. */

#ifndef PADIQ_H
#define PADIQ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Fixed-point character of x -> x^n at the orbit's reference point.
 */
typedef enum PadiqOrbitClass {
  PADIQ_ORBIT_CLASS_ATTRACTING = 0,
  PADIQ_ORBIT_CLASS_REPELLING = 1,
  PADIQ_ORBIT_CLASS_SIEGEL = 2,
  PADIQ_ORBIT_CLASS_INCONCLUSIVE = 3,
} PadiqOrbitClass;

/**
 * Status codes returned by every fallible function.
 */
typedef enum PadiqStatus {
  PADIQ_STATUS_OK = 0,
  PADIQ_STATUS_NULL_ARGUMENT = 1,
  PADIQ_STATUS_PARSE_ERROR = 2,
  PADIQ_STATUS_INVALID_CONFIG = 3,
  PADIQ_STATUS_SIZE_LIMIT = 4,
  PADIQ_STATUS_MATH_ERROR = 5,
  PADIQ_STATUS_BUFFER_TOO_SMALL = 6,
} PadiqStatus;

/**
 * Opaque exact p-adic number.
 */
typedef struct padiq_number padiq_number;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse the textual format `p^v * (d0 d1 ...)_p` into a new handle.
 * The handle must be released with `padiq_number_free`.
 */
enum PadiqStatus padiq_number_parse(const char *text, struct padiq_number **out);

/**
 * Encode an integer in base p with `precision` digits.
 */
enum PadiqStatus padiq_number_from_integer(int64_t value,
                                           uint64_t p,
                                           uint32_t precision,
                                           struct padiq_number **out);

void padiq_number_free(struct padiq_number *handle);

/**
 * Write the textual form into `buf`. Returns BufferTooSmall and stores the
 * required size (including the terminator) in `needed` when `len` is
 * insufficient.
 */
enum PadiqStatus padiq_number_format(const struct padiq_number *handle,
                                     char *buf,
                                     uintptr_t len,
                                     uintptr_t *needed);

/**
 * a + b into a new handle.
 */
enum PadiqStatus padiq_number_add(const struct padiq_number *a,
                                  const struct padiq_number *b,
                                  struct padiq_number **out);

/**
 * a - b into a new handle.
 */
enum PadiqStatus padiq_number_sub(const struct padiq_number *a,
                                  const struct padiq_number *b,
                                  struct padiq_number **out);

/**
 * a * b into a new handle.
 */
enum PadiqStatus padiq_number_mul(const struct padiq_number *a,
                                  const struct padiq_number *b,
                                  struct padiq_number **out);

/**
 * a / b into a new handle; fails on division by zero.
 */
enum PadiqStatus padiq_number_div(const struct padiq_number *a,
                                  const struct padiq_number *b,
                                  struct padiq_number **out);

/**
 * |x|_p as a double; 0 for the p-adic zero.
 */
enum PadiqStatus padiq_number_norm(const struct padiq_number *handle, double *out);

/**
 * Ultrametric distance |a - b|_p.
 */
enum PadiqStatus padiq_number_distance(const struct padiq_number *a,
                                       const struct padiq_number *b,
                                       double *out);

/**
 * Eigenvalues of H = h^2 D^alpha + optional |q|^2 potential on a one-axis
 * grid, ascending. Two-call pattern: pass `eigenvalues = NULL` to query
 * the count via `count`.
 */
enum PadiqStatus padiq_spectrum(uint64_t p,
                                uint32_t n,
                                uint32_t m,
                                double alpha,
                                int64_t h_exp,
                                bool with_abs2_potential,
                                double *eigenvalues,
                                uintptr_t capacity,
                                uintptr_t *count);

/**
 * Run the exact monomial orbit of `x0` (textual format) under x -> x^n.
 * `distance_exps` receives per-step exponents e with |x_k - x*| = p^e;
 * steps that collapse onto the fixed point at working precision store
 * INT64_MIN. `filled` reports how many entries were written.
 */
enum PadiqStatus padiq_orbit(const char *x0,
                             uint64_t exponent,
                             uintptr_t steps,
                             int64_t *distance_exps,
                             uintptr_t capacity,
                             uintptr_t *filled,
                             enum PadiqOrbitClass *class_);

/**
 * Number of decimal digits of p^L (the code-space cardinality).
 */
uint64_t padiq_mental_space_decimal_digits(uint64_t p, uint32_t l);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PADIQ_H */
