#ifndef SHAFDEC_H
#define SHAFDEC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call. Values from 10 up mirror the library's error kinds.
 */
typedef enum ShafdecStatus {
    SHAFDEC_STATUS_OK = 0,
    SHAFDEC_STATUS_NULL_ARGUMENT = 1,
    SHAFDEC_STATUS_INVALID_UTF8 = 2,
    SHAFDEC_STATUS_PANIC = 3,
    SHAFDEC_STATUS_INVALID_JSON = 10,
    SHAFDEC_STATUS_ZERO_POLYNOMIAL = 11,
    SHAFDEC_STATUS_DEGREE_TOO_LOW = 12,
    SHAFDEC_STATUS_ZERO_INPUT = 13,
    SHAFDEC_STATUS_PARSE_RATIONAL = 14,
    SHAFDEC_STATUS_PARSE_PRIME_SET = 15,
    SHAFDEC_STATUS_NOT_PRIME = 16,
    SHAFDEC_STATUS_NON_SQUAREFREE = 17,
    SHAFDEC_STATUS_MISSING_PRIME_TWO = 18,
    SHAFDEC_STATUS_NOT_S_INTEGRAL = 19,
    SHAFDEC_STATUS_BAD_PRIME = 20,
    SHAFDEC_STATUS_DEGREE_MISMATCH = 21,
    SHAFDEC_STATUS_INVALID_GENUS = 22,
    SHAFDEC_STATUS_ZERO_CONSTANT_TERM = 23,
    SHAFDEC_STATUS_NOT_SPLIT = 24,
    SHAFDEC_STATUS_REPEATED_ROOTS = 25,
    SHAFDEC_STATUS_NOT_COPRIME = 26,
    SHAFDEC_STATUS_REPEATED_POINT = 27,
    SHAFDEC_STATUS_TOO_FEW_POINTS = 28,
} ShafdecStatus;

/**
 * Opaque validated model.
 */
typedef struct ShafdecModel ShafdecModel;

/**
 * Opaque prime set `S`.
 */
typedef struct ShafdecPrimeSet ShafdecPrimeSet;

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *shafdec_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *shafdec_version(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void shafdec_string_free(char *s);

/**
 * Parse `{"genus": g, "P": [...], "Q": [...]}` into a model handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum ShafdecStatus shafdec_model_from_json(const char *json, struct ShafdecModel **out);

/**
 * # Safety
 * `model` must come from [`shafdec_model_from_json`] and not have been freed.
 */
void shafdec_model_free(struct ShafdecModel *model);

/**
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
enum ShafdecStatus shafdec_model_genus(const struct ShafdecModel *model, uint32_t *out);

/**
 * Parse a comma-separated prime list such as `"2,3,5"`; `""` is empty.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum ShafdecStatus shafdec_primeset_parse(const char *text, struct ShafdecPrimeSet **out);

/**
 * # Safety
 * `set` must come from [`shafdec_primeset_parse`] and not have been freed.
 */
void shafdec_primeset_free(struct ShafdecPrimeSet *set);

/**
 * `2^{4g}·disc(P + Q^2/4)` as a rational string.
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
enum ShafdecStatus shafdec_model_discriminant(const struct ShafdecModel *model, char **out);

/**
 * Reduction report of the model relative to `S`, as JSON.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum ShafdecStatus shafdec_good_reduction_json(const struct ShafdecModel *model,
                                               const struct ShafdecPrimeSet *primes,
                                               char **out);

/**
 * Rational Weierstrass points and their count, as JSON.
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
enum ShafdecStatus shafdec_weierstrass_json(const struct ShafdecModel *model, char **out);

/**
 * Whether reduction mod `p` is a bijection on Weierstrass points.
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
enum ShafdecStatus shafdec_reduction_bijection(const struct ShafdecModel *model,
                                               uint64_t p,
                                               bool *out);

/**
 * Full decomposition tree, as JSON.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum ShafdecStatus shafdec_decompose_json(const struct ShafdecModel *model,
                                          const struct ShafdecPrimeSet *primes,
                                          char **out);

/**
 * Fiber-product genus report for `y^2 = R1`, `y^2 = R2`, each given as an
 * ascending JSON array of rational strings.
 *
 * # Safety
 * Inputs must be NUL-terminated strings; `out` must be writable.
 */
enum ShafdecStatus shafdec_fiber_genus_json(const char *r1_json, const char *r2_json, char **out);

/**
 * Split model classes of genus `genus` with exponent bound `bound`, as JSON.
 *
 * # Safety
 * `primes` must be a live handle; `out` must be writable.
 */
enum ShafdecStatus shafdec_enumerate_json(uint32_t genus,
                                          const struct ShafdecPrimeSet *primes,
                                          uint32_t bound,
                                          char **out);

#endif  /* SHAFDEC_H */
