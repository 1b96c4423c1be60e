/* Generated by cbindgen from crates/ffi. Do not edit. */

#ifndef IDEM2_H
#define IDEM2_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum Idem2Status {
  IDEM2_STATUS_OK = 0,
  IDEM2_STATUS_NULL_POINTER = 1,
  IDEM2_STATUS_INVALID_UTF8 = 2,
  IDEM2_STATUS_PARSE_ERROR = 3,
  IDEM2_STATUS_INVALID_SPEC = 4,
  IDEM2_STATUS_NOT_IDEMPOTENT = 5,
  IDEM2_STATUS_SHAPE_VIOLATION = 6,
  IDEM2_STATUS_BUDGET_EXCEEDED = 7,
  IDEM2_STATUS_CONTEXT_MISMATCH = 8,
  IDEM2_STATUS_INVALID_ARGUMENT = 9,
  IDEM2_STATUS_PANIC = 255,
} Idem2Status;

// Opaque 2x2 matrix over a truncated series ring.
typedef struct Idem2Matrix Idem2Matrix;

// Opaque idempotent spec (split plus parameters).
typedef struct Idem2Spec Idem2Spec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread. Valid until the next
// failing call on the same thread; never null.
const char *idem2_last_error(void);

// Static name of a status code.
const char *idem2_status_name(enum Idem2Status status);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void idem2_string_free(char *s);

// Parses a spec from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum Idem2Status idem2_spec_from_json(const char *json, struct Idem2Spec **out);

// # Safety
// `spec` must be a valid handle; `out` must be writable.
enum Idem2Status idem2_spec_to_json(const struct Idem2Spec *spec, char **out);

// Writes whether the spec satisfies `alpha (1 - alpha) = beta gamma` mod P.
//
// # Safety
// `spec` must be a valid handle; `out` must be writable.
enum Idem2Status idem2_spec_validate(const struct Idem2Spec *spec, bool *out);

// # Safety
// `spec` must be null or a handle from this library, not yet freed.
void idem2_spec_free(struct Idem2Spec *spec);

// Builds the idempotent of a spec from the closed per-case formulas.
//
// # Safety
// `spec` must be a valid handle; `out` must be writable.
enum Idem2Status idem2_construct(const struct Idem2Spec *spec, struct Idem2Matrix **out);

// Builds the idempotent of a spec by CRT gluing of its residue matrices.
//
// # Safety
// `spec` must be a valid handle; `out` must be writable.
enum Idem2Status idem2_construct_crt(const struct Idem2Spec *spec, struct Idem2Matrix **out);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum Idem2Status idem2_matrix_from_json(const char *json, struct Idem2Matrix **out);

// # Safety
// `matrix` must be a valid handle; `out` must be writable.
enum Idem2Status idem2_matrix_to_json(const struct Idem2Matrix *matrix, char **out);

// # Safety
// `matrix` must be a valid handle; `out` must be writable.
enum Idem2Status idem2_matrix_is_idempotent(const struct Idem2Matrix *matrix, bool *out);

// Writes 1 when both handles hold the same matrix.
//
// # Safety
// Both handles must be valid; `out` must be writable.
enum Idem2Status idem2_matrix_equal(const struct Idem2Matrix *a,
                                    const struct Idem2Matrix *b,
                                    bool *out);

// # Safety
// `matrix` must be null or a handle from this library, not yet freed.
void idem2_matrix_free(struct Idem2Matrix *matrix);

// Recovers the canonical spec of an idempotent matrix.
//
// # Safety
// `matrix` must be a valid handle; `out` must be writable.
enum Idem2Status idem2_classify(const struct Idem2Matrix *matrix, struct Idem2Spec **out);

// Enumerates every idempotent over `Z_n` with `vars` variables truncated
// above total degree `trunc`, writing the census JSON (as printed by
// `idem2 enumerate`). A `budget` of 0 selects the default.
//
// # Safety
// `out` must be writable.
enum Idem2Status idem2_enumerate_json(uint64_t n,
                                      uint32_t vars,
                                      uint32_t trunc,
                                      bool with_oracle,
                                      uint64_t budget,
                                      char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IDEM2_H */
