#ifndef TORSION_H
#define TORSION_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TorsionStatus {
  TORSION_STATUS_OK = 0,
  TORSION_STATUS_NULL_POINTER = 1,
  TORSION_STATUS_INVALID_UTF8 = 2,
  // Malformed or unsupported input.
  TORSION_STATUS_INVALID_INPUT = 3,
  // The computation ran but failed, e.g. a search budget ran out.
  TORSION_STATUS_COMPUTATION = 4,
  // A Rust panic was caught at the boundary.
  TORSION_STATUS_PANIC = 5,
} TorsionStatus;

// Field `Q(√−d)` with its ring of integers.
typedef struct TorsionField TorsionField;

// A modular symbol `⟨α, β; g⟩`.
typedef struct TorsionSymbol TorsionSymbol;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, static storage.
const char *torsion_version(void);

// Message of the last failure on this thread, or null. Valid until the next
// failing call on the same thread.
const char *torsion_last_error(void);

// # Safety
// `s` must come from this library, or be null.
void torsion_string_free(char *s);

// # Safety
// `out` must be a valid pointer.
enum TorsionStatus torsion_field_new(uint32_t d, struct TorsionField **out);

// # Safety
// `f` must come from [`torsion_field_new`], or be null.
void torsion_field_free(struct TorsionField *f);

// Symbol from endpoint strings (`inf`, `x` or `x/y`) and a matrix `a,b;c,d`.
//
// # Safety
// Pointers must be valid; strings NUL-terminated.
enum TorsionStatus torsion_symbol_new(const struct TorsionField *field,
                                      const char *alpha,
                                      const char *beta,
                                      const char *g,
                                      struct TorsionSymbol **out);

// # Safety
// `s` must come from [`torsion_symbol_new`], or be null.
void torsion_symbol_free(struct TorsionSymbol *s);

// Conductor, support and denominator as JSON.
//
// # Safety
// Pointers must be valid.
enum TorsionStatus torsion_symbol_conductor(const struct TorsionSymbol *s,
                                            uint64_t margin,
                                            char **out_json);

// Split of `⟨0, ∞; g⟩` avoiding `modulus·p`, as JSON.
//
// # Safety
// Pointers must be valid.
enum TorsionStatus torsion_symbol_split(const struct TorsionSymbol *s,
                                        uint64_t modulus,
                                        uint64_t p,
                                        char **out_json);

// H1 report of `Γ₀(level)` in the Bianchi group of the given kind
// (`sl2`, `psl2` or `pgl2`), as JSON.
//
// # Safety
// Pointers must be valid; strings NUL-terminated.
enum TorsionStatus torsion_bianchi_h1(uint32_t d,
                                      const char *kind,
                                      const char *level,
                                      char **out_json);

// Invariant factors of a row-major `rows × cols` integer matrix, as JSON
// `{"rank": r, "divisors": ["d1", …]}`.
//
// # Safety
// `entries` must point to `rows·cols` values (may be null when that is 0).
enum TorsionStatus torsion_smith_form(const int64_t *entries,
                                      uintptr_t rows,
                                      uintptr_t cols,
                                      char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TORSION_H */
