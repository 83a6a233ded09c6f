#ifndef NETFORGE_H
#define NETFORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NfStatus {
  NF_STATUS_OK = 0,
  NF_STATUS_NULL_POINTER = 1,
  NF_STATUS_INVALID_UTF8 = 2,
  NF_STATUS_INVALID_ARGUMENT = 3,
  NF_STATUS_FIELD = 4,
  NF_STATUS_GEOMETRY = 5,
  NF_STATUS_NET = 6,
  NF_STATUS_CONSTRUCTION = 7,
  NF_STATUS_CYCLOTOMIC = 8,
  NF_STATUS_FORMAT = 9,
  NF_STATUS_SEARCH = 10,
  NF_STATUS_PANIC = 11,
} NfStatus;

/**
 * A finite field GF(p^r).
 */
typedef struct NfField NfField;

/**
 * A net or dual net.
 */
typedef struct NfNet NfNet;

/**
 * Search limits; zero means unlimited.
 */
typedef struct NfSearchLimits {
  uint64_t max_nodes;
  uint64_t max_time_ms;
  uint64_t max_solutions;
  /**
   * Largest field order accepted by the from-scratch search; 0 selects 16.
   */
  uint64_t q_cap;
  bool serial;
} NfSearchLimits;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *nf_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void nf_string_free(char *s);

/**
 * Creates GF(p^r) with the canonical modulus.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum NfStatus nf_field_new(uint64_t p, uint32_t r, struct NfField **out);

/**
 * # Safety
 * `f` must be null or a handle from [`nf_field_new`] not yet freed.
 */
void nf_field_free(struct NfField *f);

/**
 * Number of elements; 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
uint64_t nf_field_order(const struct NfField *f);

/**
 * Field descriptor as JSON.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum NfStatus nf_field_descriptor(const struct NfField *f, char **out);

/**
 * `a + b` on element indices.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum NfStatus nf_field_add(const struct NfField *f, uint32_t a, uint32_t b, uint32_t *out);

/**
 * `a * b` on element indices.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum NfStatus nf_field_mul(const struct NfField *f, uint32_t a, uint32_t b, uint32_t *out);

/**
 * `a / b` on element indices; fails with [`NfStatus::Field`] for `b = 0`.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum NfStatus nf_field_div(const struct NfField *f, uint32_t a, uint32_t b, uint32_t *out);

/**
 * Parses a net JSON document.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum NfStatus nf_net_from_json(const char *json, struct NfNet **out);

/**
 * Builds a net from a construction spec such as
 * `{"family":"classical","p":7,"r":1}`.
 *
 * # Safety
 * `spec_json` must be a nul-terminated string and `out` a valid pointer.
 */
enum NfStatus nf_net_construct(const char *spec_json, struct NfNet **out);

/**
 * # Safety
 * `n` must be null or a live handle not yet freed.
 */
void nf_net_free(struct NfNet *n);

/**
 * Serializes a net as net JSON.
 *
 * # Safety
 * `n` must be a live handle and `out` a valid pointer.
 */
enum NfStatus nf_net_to_json(const struct NfNet *n, char **out);

/**
 * Checks the net axioms. `report` may be null; otherwise it receives the
 * verification report JSON.
 *
 * # Safety
 * `n` must be a live handle, `pass` a valid pointer, `report` null or valid.
 */
enum NfStatus nf_net_verify(const struct NfNet *n, bool *pass, char **report);

/**
 * Cross-ratio report of a 4-net (dual nets are dualized), including the
 * pencil value.
 *
 * # Safety
 * `n` must be a live handle and `out` a valid pointer.
 */
enum NfStatus nf_net_analyze(const struct NfNet *n, char **out);

/**
 * One-component extensions of a net as a search certificate. `limits` may be null.
 *
 * # Safety
 * `n` must be a live handle, `limits` null or valid, `out` a valid pointer.
 */
enum NfStatus nf_net_extend(const struct NfNet *n, const struct NfSearchLimits *limits, char **out);

/**
 * 5-net refutation certificate for a 4-net. `limits` may be null.
 *
 * # Safety
 * `n` must be a live handle, `limits` null or valid, `out` a valid pointer.
 */
enum NfStatus nf_net_refute(const struct NfNet *n, const struct NfSearchLimits *limits, char **out);

/**
 * 4-nets of order 3 over the field, up to projectivity. `limits` may be null.
 *
 * # Safety
 * `f` must be a live handle, `limits` null or valid, `out` a valid pointer.
 */
enum NfStatus nf_search_order3(const struct NfField *f,
                               const struct NfSearchLimits *limits,
                               char **out);

/**
 * Resultant bound report for 4-nets of order `n`; `cap` limits trial division.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum NfStatus nf_bound_report(uint64_t n, uint64_t cap, char **out);

/**
 * gcd certificate for 4-nets of order `n` in PG(2, q). `refuted` receives
 * the verdict.
 *
 * # Safety
 * `refuted` and `out` must be valid pointers; `out` may be null.
 */
enum NfStatus nf_gcd_certificate(uint64_t n, uint64_t q, bool *refuted, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NETFORGE_H */
