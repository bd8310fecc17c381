#ifndef K3KIT_H
#define K3KIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum K3kStatus {
  K3kStatus_Ok = 0,
  K3kStatus_NullArgument = 1,
  K3kStatus_ParseError = 2,
  K3kStatus_DomainError = 3,
  K3kStatus_Panic = 4,
} K3kStatus;

/**
 * Opaque lattice handle.
 */
typedef struct K3kLattice K3kLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread, or null. The pointer is
 * valid until the next failing call on the same thread; do not free it.
 */
const char *k3k_last_error_message(void);

/**
 * Release a string returned by any `k3k_*` call.
 */
void k3k_string_free(char *s);

/**
 * Build a named lattice: "U", "E8", "E8_MINUS_1", "RANK1(k)".
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum K3kStatus k3k_lattice_standard(const char *name, struct K3kLattice **out);

/**
 * Build a lattice from a row-major rank x rank Gram matrix of i64 entries.
 *
 * # Safety
 * `entries` must point to `rank * rank` values; `out` must be valid.
 */
enum K3kStatus k3k_lattice_from_gram(uintptr_t rank,
                                     const int64_t *entries,
                                     struct K3kLattice **out);

/**
 * Release a lattice handle.
 *
 * # Safety
 * `l` must come from a `k3k_lattice_*` constructor, at most once.
 */
void k3k_lattice_free(struct K3kLattice *l);

/**
 * Rank of the lattice; 0 for a null handle.
 *
 * # Safety
 * `l` must be a live handle or null.
 */
uintptr_t k3k_lattice_rank(const struct K3kLattice *l);

/**
 * Invariants as a JSON string (det, rank, signature, parity, discriminant
 * group invariant factors).
 *
 * # Safety
 * `l` must be a live handle; `out` a valid pointer.
 */
enum K3kStatus k3k_lattice_invariants_json(const struct K3kLattice *l, char **out);

/**
 * Neron-Severi report for polarization degree 2d, as JSON.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum K3kStatus k3k_ns_report_json(int64_t d, char **out);

/**
 * Fiber analysis of `y^2 = x(x^2 + a x + b)` with comma-separated rational
 * coefficient lists, as JSON; `quotient` != 0 analyzes the 2-isogeny
 * quotient.
 *
 * # Safety
 * `a_csv`, `b_csv` must be NUL-terminated strings; `out` a valid pointer.
 */
enum K3kStatus k3k_elliptic_analyze_json(const char *a_csv,
                                         const char *b_csv,
                                         int32_t quotient,
                                         char **out);

/**
 * Run the rule engine on a surface-descriptor JSON string; returns the
 * explained derivation as JSON.
 *
 * # Safety
 * `descriptor_json` must be a NUL-terminated string; `out` a valid pointer.
 */
enum K3kStatus k3k_classify_json(const char *descriptor_json, char **out);

/**
 * Run the full acceptance suite; returns Ok iff every criterion passes.
 */
enum K3kStatus k3k_selftest(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* K3KIT_H */
