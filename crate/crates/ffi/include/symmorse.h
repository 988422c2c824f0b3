/* C interface to the symmorse discrete Morse theory library. */

#ifndef SYMMORSE_H
#define SYMMORSE_H

/* Generated by cbindgen from the Rust sources; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success.
 */
#define SM_OK 0

/**
 * A required pointer argument was null.
 */
#define SM_ERR_NULL_ARG -1

/**
 * A string argument was not valid UTF-8.
 */
#define SM_ERR_UTF8 -2

/**
 * Reading or parsing a file failed.
 */
#define SM_ERR_IO -3

/**
 * The requested check ran and was falsified.
 */
#define SM_ERR_FALSIFIED -4

/**
 * The caller-provided buffer is too small.
 */
#define SM_ERR_BUFFER -5

/**
 * An internal invariant failed.
 */
#define SM_ERR_INTERNAL -6

/**
 * Opaque handle to a validated-on-load symmetric Δ-complex.
 */
typedef struct sm_complex sm_complex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing this thread's most recent failure. The pointer stays
 * valid until the next failing call on the same thread. Never null.
 */
const char *sm_last_error(void);

/**
 * Load a complex presentation from a JSON file and validate its relation
 * families. On success writes a handle to `out`; free it with
 * `sm_complex_free`. Presentations that load but fail validation return
 * `SM_ERR_FALSIFIED` and no handle.
 *
 * # Safety
 * `path` must be a valid C string and `out` a valid pointer.
 */
int sm_complex_load_json(const char *path, struct sm_complex **out);

/**
 * Release a handle returned by `sm_complex_load_json`. Null is a no-op.
 *
 * # Safety
 * `x` must be null or a handle from this library, freed at most once.
 */
void sm_complex_free(struct sm_complex *x);

/**
 * Top dimension of the complex.
 *
 * # Safety
 * `x` must be a live handle; `out_dim` must be a valid pointer.
 */
int sm_complex_max_dim(const struct sm_complex *x, size_t *out_dim);

/**
 * Number of simplices in one dimension (0 above the top dimension).
 *
 * # Safety
 * `x` must be a live handle; `out_count` must be a valid pointer.
 */
int sm_complex_simplex_count(const struct sm_complex *x, size_t dim, size_t *out_count);

/**
 * Rational Betti numbers of the complex, one per dimension `0..=max_dim`.
 * Writes the required length to `out_len`; fills `buf` when `cap` suffices,
 * otherwise returns `SM_ERR_BUFFER` (call again with a larger buffer).
 *
 * # Safety
 * `x` must be a live handle; `buf` must point to at least `cap` elements;
 * `out_len` must be a valid pointer.
 */
int sm_complex_betti(const struct sm_complex *x, size_t *buf, size_t cap, size_t *out_len);

/**
 * Validate a discrete Morse function stored as a JSON file against the
 * complex. Returns `SM_OK` when valid and `SM_ERR_FALSIFIED` (with the
 * violation count in the error message) when not.
 *
 * # Safety
 * `x` must be a live handle; `path` must be a valid C string.
 */
int sm_complex_check_dmf_file(const struct sm_complex *x, const char *path);

/**
 * Search for a matching with the given seed, replay its collapsing
 * sequence, and report through `out_point` whether the trace certifies a
 * point (a single vertex-orbit attachment and nothing else).
 *
 * # Safety
 * `x` must be a live handle; `out_point` must be a valid pointer.
 */
int sm_complex_collapse_certify(const struct sm_complex *x, uint64_t seed, bool *out_point);

/**
 * Build the coloop census for rank bound `g` and run its four-clause
 * certificate. Writes the verdict to `out_ok`. Rank bound 4 needs
 * `allow_g4`; bounds outside `1..=4` are rejected as `SM_ERR_IO`-style
 * usage failures with an explanatory message.
 *
 * # Safety
 * `out_ok` must be a valid pointer.
 */
int sm_coloop_certify(size_t g, bool allow_g4, bool *out_ok);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SYMMORSE_H */
