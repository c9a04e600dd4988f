#ifndef PKP_H
#define PKP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PkpAlgorithm {
  PKP_ALGORITHM_EXACT = 0,
  PKP_ALGORITHM_FPTAS = 1,
  PKP_ALGORITHM_GREEDY = 2,
  PKP_ALGORITHM_BRUTE = 3,
} PkpAlgorithm;

/**
 * Result code of every fallible call.
 */
typedef enum PkpStatus {
  PKP_STATUS_OK = 0,
  PKP_STATUS_NULL_POINTER = 1,
  PKP_STATUS_PARSE = 2,
  PKP_STATUS_INVALID_INPUT = 3,
  PKP_STATUS_EPS_OUT_OF_RANGE = 4,
  PKP_STATUS_TOO_LARGE = 5,
  PKP_STATUS_BUFFER_TOO_SMALL = 6,
  PKP_STATUS_INTERNAL = 7,
} PkpStatus;

/**
 * Opaque problem instance.
 */
typedef struct PkpInstance PkpInstance;

/**
 * Opaque solver result, indices refer to the instance it was solved from.
 */
typedef struct PkpSolution PkpSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, empty after a
 * success. The pointer stays valid until the next call into this library
 * from the same thread.
 */
const char *pkp_last_error(void);

/**
 * Parses an instance from the JSON format.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum PkpStatus pkp_instance_from_json(const char *json, struct PkpInstance **out);

/**
 * Parses an instance from the plain-text format (`n C` then `p w` lines).
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum PkpStatus pkp_instance_from_text(const char *text, struct PkpInstance **out);

/**
 * Builds an instance from parallel profit and weight arrays of length `n`.
 *
 * # Safety
 * `profits` and `weights` must point to `n` readable values (or may be null
 * when `n == 0`); `out` must be a valid pointer.
 */
enum PkpStatus pkp_instance_new(const int64_t *profits,
                                const int64_t *weights,
                                size_t n,
                                int64_t capacity,
                                struct PkpInstance **out);

/**
 * Reduces a Product Partition instance to a PKP instance.
 *
 * # Safety
 * `a` must point to `n` readable values; `out` must be a valid pointer.
 */
enum PkpStatus pkp_reduce_ppp(const uint64_t *a, size_t n, struct PkpInstance **out);

/**
 * Number of items, 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle from this library.
 */
size_t pkp_instance_len(const struct PkpInstance *inst);

/**
 * Capacity, 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle from this library.
 */
int64_t pkp_instance_capacity(const struct PkpInstance *inst);

/**
 * JSON encoding of the instance; release with [`pkp_string_free`]. Null on
 * a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle from this library.
 */
char *pkp_instance_to_json(const struct PkpInstance *inst);

/**
 * # Safety
 * `inst` must be null or a handle from this library not yet freed.
 */
void pkp_instance_free(struct PkpInstance *inst);

/**
 * Preprocesses and solves `inst`. `eps_num/eps_den` is used by the FPTAS
 * only and must be `0/0` for the other algorithms.
 *
 * # Safety
 * `inst` must be a live handle and `out` a valid pointer.
 */
enum PkpStatus pkp_solve(const struct PkpInstance *inst,
                         enum PkpAlgorithm algorithm,
                         uint64_t eps_num,
                         uint64_t eps_den,
                         struct PkpSolution **out);

/**
 * Number of selected items, 0 for a null handle.
 *
 * # Safety
 * `sol` must be null or a live handle from this library.
 */
size_t pkp_solution_len(const struct PkpSolution *sol);

/**
 * Copies the sorted item indices into `buf` (capacity `cap`).
 *
 * # Safety
 * `sol` must be a live handle; `buf` must have room for `cap` values.
 */
enum PkpStatus pkp_solution_indices(const struct PkpSolution *sol, size_t *buf, size_t cap);

/**
 * Objective value as a decimal string owned by the solution handle.
 *
 * # Safety
 * `sol` must be null or a live handle; the pointer dies with the handle.
 */
const char *pkp_solution_value(const struct PkpSolution *sol);

/**
 * # Safety
 * `sol` must be null or a handle from this library not yet freed.
 */
void pkp_solution_free(struct PkpSolution *sol);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void pkp_string_free(char *s);

/**
 * `⌊(num/den)·log₂x⌋` computed exactly.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PkpStatus pkp_floor_scaled_log2(uint64_t x, uint64_t num, uint64_t den, uint64_t *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PKP_H */
