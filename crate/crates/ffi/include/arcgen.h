#ifndef ARCGEN_H
#define ARCGEN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ArcgenFormat {
  ARCGEN_FORMAT_EDGE_LIST = 0,
  ARCGEN_FORMAT_SPARSE6 = 1,
} ArcgenFormat;

typedef enum ArcgenGroup {
  /**
   * G_h
   */
  ARCGEN_GROUP_BIG = 0,
  /**
   * γ_{q-1} ⋊ H
   */
  ARCGEN_GROUP_SMALL = 1,
} ArcgenGroup;

typedef enum ArcgenStatus {
  ARCGEN_STATUS_OK = 0,
  ARCGEN_STATUS_NULL_POINTER = 1,
  ARCGEN_STATUS_INVALID_INPUT = 2,
  ARCGEN_STATUS_CAP_EXCEEDED = 3,
  ARCGEN_STATUS_CHECK_FAILED = 4,
  ARCGEN_STATUS_PARTIAL = 5,
  ARCGEN_STATUS_PANIC = 6,
} ArcgenStatus;

/**
 * Opaque handle to a constructed (Γ_h, G_h).
 */
typedef struct ArcgenBundle ArcgenBundle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next library call on the same thread.
 */
const char *arcgen_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void arcgen_string_free(char *s);

/**
 * Builds (Γ_h, G_h) with default caps and checks every construction invariant.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum ArcgenStatus arcgen_bundle_new(uint32_t p, uint32_t h, struct ArcgenBundle **out);

/**
 * # Safety
 * `bundle` must be null or a handle from [`arcgen_bundle_new`] not yet freed.
 */
void arcgen_bundle_free(struct ArcgenBundle *bundle);

/**
 * # Safety
 * `bundle` must be a live handle and `out` valid for writing.
 */
enum ArcgenStatus arcgen_bundle_vertex_count(const struct ArcgenBundle *bundle, uintptr_t *out);

/**
 * # Safety
 * `bundle` must be a live handle and `out` valid for writing.
 */
enum ArcgenStatus arcgen_bundle_valency(const struct ArcgenBundle *bundle, uintptr_t *out);

/**
 * |G_h| as a decimal string.
 *
 * # Safety
 * `bundle` must be a live handle and `out` valid for writing.
 */
enum ArcgenStatus arcgen_bundle_order(const struct ArcgenBundle *bundle, char **out);

/**
 * Γ_h as edge list or sparse6 text.
 *
 * # Safety
 * `bundle` must be a live handle and `out` valid for writing.
 */
enum ArcgenStatus arcgen_bundle_export_graph(const struct ArcgenBundle *bundle,
                                             int32_t format,
                                             char **out);

/**
 * Generators of G_h or γ⋊H, one permutation per line.
 *
 * # Safety
 * `bundle` must be a live handle and `out` valid for writing.
 */
enum ArcgenStatus arcgen_bundle_generators(const struct ArcgenBundle *bundle,
                                           int32_t group,
                                           char **out);

/**
 * Runs the claim checklist and writes the certificate. Returns `Ok` when all
 * evaluated claims pass, `Partial` when some were skipped, `CheckFailed`
 * when any failed; the certificate is written in all three cases.
 *
 * # Safety
 * `out` must be valid for writing.
 */
enum ArcgenStatus arcgen_verify_theorem1(uint32_t p, uint32_t h, bool timing, char **out);

/**
 * Parses an instance (edge list, blank line, generators) and writes the
 * bound report. Returns `CheckFailed` when decomposition, size bound or
 * generation fails; the report is written in that case too.
 *
 * # Safety
 * `instance` must be a nul-terminated string and `out` valid for writing.
 */
enum ArcgenStatus arcgen_verify_theorem2(const char *instance, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARCGEN_H */
