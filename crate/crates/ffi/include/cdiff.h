#ifndef CDIFF_H
#define CDIFF_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CdiffStatus {
  CDIFF_STATUS_OK = 0,
  CDIFF_STATUS_NULL_POINTER = 1,
  CDIFF_STATUS_INVALID_UTF8 = 2,
  CDIFF_STATUS_PARSE = 3,
  CDIFF_STATUS_INVALID_FIELD = 4,
  CDIFF_STATUS_INVALID_T = 5,
  CDIFF_STATUS_INVALID_PARAMS = 6,
  CDIFF_STATUS_OUT_OF_RANGE = 7,
  CDIFF_STATUS_DOMAIN_MISMATCH = 8,
  CDIFF_STATUS_DIVISION_BY_ZERO = 9,
  CDIFF_STATUS_IDENTITY_C = 10,
  CDIFF_STATUS_NOT_COVERED = 11,
  CDIFF_STATUS_INTERNAL = 12,
  CDIFF_STATUS_PANIC = 13,
} CdiffStatus;

typedef enum CdiffVerdict {
  CDIFF_VERDICT_MATCH = 0,
  CDIFF_VERDICT_BOUND_OK = 1,
  CDIFF_VERDICT_VIOLATION = 2,
  CDIFF_VERDICT_NOT_COVERED = 3,
} CdiffVerdict;

// Opaque F_{p^m}.
typedef struct CdiffField CdiffField;

// Opaque function bound to the context it was parsed in.
typedef struct CdiffFunc CdiffFunc;

// Opaque quadratic extension with its parameter t.
typedef struct CdiffQuadExt CdiffQuadExt;

// Result of one c-DDT. `class_code` is 1 for PcN, 2 for APcN and 0
// otherwise. Witness points and values are pair indices x + q*y (or
// extension-field indices for functions on F_{q^2}).
typedef struct CdiffReport {
  uint32_t uniformity;
  uint32_t class_code;
  uint32_t witness_a;
  uint32_t witness_b;
} CdiffReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread. Valid until the next
// failing call on the same thread.
const char *cdiff_last_error(void);

// Builds F_{p^m} with the default modulus.
//
// # Safety
// `out` must be a valid pointer to write a handle into.
enum CdiffStatus cdiff_field_new(uint32_t p, uint32_t m, struct CdiffField **out);

// # Safety
// `field` must come from `cdiff_field_new` and not have been freed, or be null.
void cdiff_field_free(struct CdiffField *field);

// Field order, or 0 for a null handle.
//
// # Safety
// `field` must be a live handle or null.
uint32_t cdiff_field_order(const struct CdiffField *field);

// `op`: 0 add, 1 sub, 2 mul, 3 div.
//
// # Safety
// `field` must be a live handle and `out` writable.
enum CdiffStatus cdiff_field_arith(const struct CdiffField *field,
                                   uint32_t op,
                                   uint32_t a,
                                   uint32_t b,
                                   uint32_t *out);

// Absolute trace of `x`.
//
// # Safety
// `field` must be a live handle and `out` writable.
enum CdiffStatus cdiff_field_trace(const struct CdiffField *field, uint32_t x, uint32_t *out);

// Builds F_{q^2} over F_{p^m}. `t` is an element string such as "w^3", or
// null for the default choice.
//
// # Safety
// `t` must be null or a NUL-terminated string; `out` must be writable.
enum CdiffStatus cdiff_quadext_new(uint32_t p,
                                   uint32_t m,
                                   const char *t,
                                   struct CdiffQuadExt **out);

// # Safety
// `qe` must come from `cdiff_quadext_new` and not have been freed, or be null.
void cdiff_quadext_free(struct CdiffQuadExt *qe);

// Order q of the base field, or 0 for a null handle.
//
// # Safety
// `qe` must be a live handle or null.
uint32_t cdiff_quadext_q(const struct CdiffQuadExt *qe);

// phi(x, y) = x + beta*y as an index into F_{q^2}.
//
// # Safety
// `qe` must be a live handle and `out` writable.
enum CdiffStatus cdiff_quadext_phi(const struct CdiffQuadExt *qe,
                                   uint32_t x,
                                   uint32_t y,
                                   uint32_t *out);

// Parses a function spec such as "genlinh{L=x;h=inv}" in `qe`.
//
// # Safety
// `qe` must be a live handle, `spec` a NUL-terminated string and `out`
// writable. The function keeps its own reference to the context.
enum CdiffStatus cdiff_func_parse(const struct CdiffQuadExt *qe,
                                  const char *spec,
                                  struct CdiffFunc **out);

// # Safety
// `func` must come from `cdiff_func_parse` and not have been freed, or be null.
void cdiff_func_free(struct CdiffFunc *func);

// c-differential uniformity at c = (c1, c2).
//
// # Safety
// `func` must be a live handle and `out` writable.
enum CdiffStatus cdiff_uniformity(const struct CdiffFunc *func,
                                  uint32_t c1,
                                  uint32_t c2,
                                  struct CdiffReport *out);

// Checks the closed-form prediction at c = (c1, c2) against brute force.
//
// # Safety
// `func` must be a live handle; `verdict` and `observed` writable.
enum CdiffStatus cdiff_verify(const struct CdiffFunc *func,
                              uint32_t c1,
                              uint32_t c2,
                              enum CdiffVerdict *verdict,
                              uint32_t *observed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CDIFF_H */
