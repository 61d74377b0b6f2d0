#ifndef ZETA_EXTREMAL_H
#define ZETA_EXTREMAL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ZeConstant {
  ZE_CONSTANT_SIGMA_ONE = 0,
  ZE_CONSTANT_TURNING_BOUND = 1,
  ZE_CONSTANT_REAL_PART_BOUND = 2,
} ZeConstant;

typedef enum ZeStatus {
  ZE_STATUS_OK = 0,
  ZE_STATUS_NULL_POINTER = 1,
  ZE_STATUS_INVALID_ARGUMENT = 2,
  ZE_STATUS_PRECISION = 3,
  ZE_STATUS_PIPELINE = 4,
  ZE_STATUS_PANIC = 5,
} ZeStatus;

/**
 * Precision settings for evaluations.
 */
typedef struct ZeContext ZeContext;

/**
 * A certified real root with its enclosure.
 */
typedef struct ZeRoot ZeRoot;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or NULL. Free it
 * with `ze_string_free`.
 */
char *ze_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void ze_string_free(char *s);

/**
 * Library version, a static string.
 */
const char *ze_version(void);

/**
 * A context with `digits` decimal digits (at least 10).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ZeStatus ze_context_new(uint32_t digits, struct ZeContext **out);

/**
 * # Safety
 * `ctx` must come from `ze_context_new` and not be freed twice.
 */
void ze_context_free(struct ZeContext *ctx);

/**
 * ζ(s) for s = re + i·im given as decimal strings. The value parts and an
 * error radius come back as strings to free with `ze_string_free`.
 *
 * # Safety
 * All pointers must be valid; the strings NUL terminated.
 */
enum ZeStatus ze_zeta(const struct ZeContext *ctx,
                      const char *re,
                      const char *im,
                      char **out_re,
                      char **out_im,
                      char **out_radius);

/**
 * Solves for σ(1), E or A to `digits` decimals.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ZeStatus ze_solve_constant(enum ZeConstant which, uint32_t digits, struct ZeRoot **out);

/**
 * σ(a) for a decimal string a > 0, a ≠ 1.
 *
 * # Safety
 * `a` must be a NUL terminated string and `out` a valid pointer.
 */
enum ZeStatus ze_sigma_a(const char *a, uint32_t digits, struct ZeRoot **out);

/**
 * The L-function bound for modulus q ≥ 3 and level a ∈ (0, 1].
 *
 * # Safety
 * `a` must be a NUL terminated string and `out` a valid pointer.
 */
enum ZeStatus ze_l_bound(uint64_t q, const char *a, uint32_t digits, struct ZeRoot **out);

/**
 * The root as a decimal string.
 *
 * # Safety
 * `root` must come from this library.
 */
char *ze_root_value(const struct ZeRoot *root);

/**
 * Lower and upper ends of the certified enclosure.
 *
 * # Safety
 * All pointers must be valid.
 */
enum ZeStatus ze_root_bracket(const struct ZeRoot *root, char **lo, char **hi);

/**
 * # Safety
 * `root` must come from this library and not be freed twice.
 */
void ze_root_free(struct ZeRoot *root);

/**
 * Runs the lattice search with weights base^(40-j) and refines the pair
 * of roots; the report is JSON.
 *
 * # Safety
 * `weights_base` must be a NUL terminated string and `out_json` valid.
 */
enum ZeStatus ze_search_height(size_t n,
                               uint32_t nu,
                               uint32_t r,
                               const char *weights_base,
                               uint32_t digits,
                               char **out_json);

/**
 * Looks for a root of ζ(s) = 1 with Im s within 3 of `height`; the
 * report is JSON with the roots found, largest real part first.
 *
 * # Safety
 * `height` must be a NUL terminated string and `out_json` valid.
 */
enum ZeStatus ze_verify_height(const char *height, uint32_t digits, char **out_json);

/**
 * Number of grid points violating the (x, φ) inequality.
 *
 * # Safety
 * `out_violations` must be valid.
 */
enum ZeStatus ze_check_a3(uint32_t grid_x, uint32_t grid_phi, size_t *out_violations);

/**
 * Winding number of Σ c_k z^k around the circle |z - c| = radius. With
 * `turning` set, winds Im f + i·Re f′, whose zeros are the turning points.
 *
 * # Safety
 * `coeffs` must point to `len` doubles and `out` be valid.
 */
enum ZeStatus ze_winding_number(const double *coeffs,
                                size_t len,
                                double center_re,
                                double center_im,
                                double radius,
                                bool turning,
                                int64_t *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ZETA_EXTREMAL_H */
