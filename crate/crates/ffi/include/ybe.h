#ifndef YBE_H
#define YBE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum YbeStatus {
  YBE_STATUS_OK = 0,
  YBE_STATUS_NULL_POINTER = 1,
  // The input tables do not define a valid object.
  YBE_STATUS_INVALID_INPUT = 2,
  // The operation does not apply to this object (for example a non-involutive solution).
  YBE_STATUS_NOT_APPLICABLE = 3,
  // A size cap or time budget was exceeded.
  YBE_STATUS_LIMIT = 4,
  YBE_STATUS_IO = 5,
  YBE_STATUS_INTERNAL = 6,
} YbeStatus;

// A finite skew brace.
typedef struct YbeBrace YbeBrace;

// A set-theoretic solution of the Yang–Baxter equation.
typedef struct YbeSolution YbeSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the most recent failure on this thread; empty after a success. The
// pointer stays valid until the next call into this library on the same thread.
const char *ybe_last_error_message(void);

// Validates `sigma[x*n + y] = σ_x(y)` and `tau[y*n + x] = τ_y(x)` and creates a solution.
//
// # Safety
// `sigma` and `tau` must point to `n * n` readable values; `result` must be writable.
enum YbeStatus ybe_solution_new(size_t n,
                                const uint32_t *sigma,
                                const uint32_t *tau,
                                struct YbeSolution **result);

// # Safety
// `s` must be null or a handle from this library that has not been freed.
void ybe_solution_free(struct YbeSolution *s);

// Number of points, or 0 for a null handle.
//
// # Safety
// `s` must be null or a live handle.
size_t ybe_solution_size(const struct YbeSolution *s);

// Copies the tables into two caller-provided `n * n` arrays.
//
// # Safety
// `s` must be a live handle; `sigma` and `tau` must have room for `n * n` values.
enum YbeStatus ybe_solution_tables(const struct YbeSolution *s, uint32_t *sigma, uint32_t *tau);

// # Safety
// `s` must be a live handle and `result` writable.
enum YbeStatus ybe_solution_is_involutive(const struct YbeSolution *s, bool *result);

// # Safety
// `s` must be a live handle and `result` writable.
enum YbeStatus ybe_solution_is_indecomposable(const struct YbeSolution *s, bool *result);

// Multipermutation level, or -1 when the solution is not a multipermutation solution.
// Requires an involutive solution.
//
// # Safety
// `s` must be a live handle and `result` writable.
enum YbeStatus ybe_solution_multipermutation_level(const struct YbeSolution *s, int32_t *result);

// The retraction as a new handle. Requires an involutive solution.
//
// # Safety
// `s` must be a live handle and `result` writable.
enum YbeStatus ybe_solution_retract(const struct YbeSolution *s, struct YbeSolution **result);

// Whether two solutions are isomorphic.
//
// # Safety
// `a` and `b` must be live handles and `result` writable.
enum YbeStatus ybe_solution_is_isomorphic(const struct YbeSolution *a,
                                          const struct YbeSolution *b,
                                          bool *result);

// Counts isomorphism classes of size `n`. With `involutive_only` the
// non-involutive count is reported as 0.
//
// # Safety
// `involutive` and `non_involutive` must be writable.
enum YbeStatus ybe_enumerate_counts(size_t n,
                                    bool involutive_only,
                                    size_t jobs,
                                    uint64_t *involutive,
                                    uint64_t *non_involutive);

// Validates the tables of `(A,+)` and `(A,∘)` and creates a skew brace.
//
// # Safety
// `add` and `mul` must point to `n * n` readable values; `result` must be writable.
enum YbeStatus ybe_brace_new(size_t n,
                             const uint32_t *add,
                             const uint32_t *mul,
                             struct YbeBrace **result);

// # Safety
// `b` must be null or a handle from this library that has not been freed.
void ybe_brace_free(struct YbeBrace *b);

// Number of elements, or 0 for a null handle.
//
// # Safety
// `b` must be null or a live handle.
size_t ybe_brace_size(const struct YbeBrace *b);

// The solution of the brace as a new handle.
//
// # Safety
// `b` must be a live handle and `result` writable.
enum YbeStatus ybe_brace_solution(const struct YbeBrace *b, struct YbeSolution **result);

// # Safety
// `b` must be a live handle and `result` writable.
enum YbeStatus ybe_brace_is_two_sided(const struct YbeBrace *b, bool *result);

// Right nilpotency class, or -1 when the brace is not right nilpotent.
//
// # Safety
// `b` must be a live handle and `result` writable.
enum YbeStatus ybe_brace_right_nilpotency(const struct YbeBrace *b, int32_t *result);

// Number of isomorphism classes of skew braces of order `n`.
//
// # Safety
// `result` must be writable.
enum YbeStatus ybe_brace_count(size_t n, uint64_t *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* YBE_H */
