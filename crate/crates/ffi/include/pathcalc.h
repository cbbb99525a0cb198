#ifndef PATHCALC_H
#define PATHCALC_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 1 to 4 match the command-line exit codes.
 */
typedef enum PcStatus {
  PC_STATUS_OK = 0,
  /**
   * A verification report contains a failed check.
   */
  PC_STATUS_VERIFY_FAILED = 1,
  PC_STATUS_PARSE = 2,
  PC_STATUS_DOMAIN = 3,
  PC_STATUS_RESOURCE = 4,
  PC_STATUS_NULL_POINTER = 5,
  PC_STATUS_INVALID_UTF8 = 6,
  PC_STATUS_PANIC = 7,
  /**
   * A counterexample search finished without a witness.
   */
  PC_STATUS_NOT_FOUND = 8,
} PcStatus;

/**
 * A chain together with the space it lives in.
 */
typedef struct PcChain PcChain;

/**
 * A graded operator bound to a vertex set.
 */
typedef struct PcOperator PcOperator;

/**
 * A finite ordered vertex set.
 */
typedef struct PcVertexSet PcVertexSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *pc_version(void);

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library on the same thread.
 */
const char *pc_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string obtained from this library, not yet freed.
 */
void pc_string_free(char *s);

/**
 * Builds a vertex set from comma-separated labels, e.g. `"a,b,c"`.
 *
 * # Safety
 * `labels` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PcStatus pc_vertex_set_new(const char *labels, struct PcVertexSet **out);

/**
 * Number of vertices, or 0 for null.
 *
 * # Safety
 * `vs` must be null or a live handle.
 */
size_t pc_vertex_set_len(const struct PcVertexSet *vs);

/**
 * # Safety
 * `vs` must be null or a handle from [`pc_vertex_set_new`], not yet freed.
 */
void pc_vertex_set_free(struct PcVertexSet *vs);

/**
 * Parses a chain document. `vs` may be null when the document names its
 * vertices; otherwise the two must agree.
 *
 * # Safety
 * `json` must be a NUL-terminated string, `vs` null or a live handle, and
 * `out` a valid pointer.
 */
enum PcStatus pc_chain_from_json(const char *json,
                                 const struct PcVertexSet *vs,
                                 struct PcChain **out);

/**
 * Canonical JSON for a chain.
 *
 * # Safety
 * `chain` must be a live handle and `out` a valid pointer.
 */
enum PcStatus pc_chain_to_json(const struct PcChain *chain, char **out);

/**
 * # Safety
 * `chain` must be null or a handle from this library, not yet freed.
 */
void pc_chain_free(struct PcChain *chain);

/**
 * Builds an operator from a descriptor over `vs`.
 *
 * # Safety
 * `json` must be a NUL-terminated string, `vs` a live handle and `out` a
 * valid pointer.
 */
enum PcStatus pc_operator_from_json(const char *json,
                                    const struct PcVertexSet *vs,
                                    struct PcOperator **out);

/**
 * Degree shift of the operator: +1 for co-boundaries, −1 for boundaries.
 *
 * # Safety
 * `op` must be a live handle and `out` a valid pointer.
 */
enum PcStatus pc_operator_shift(const struct PcOperator *op, int64_t *out);

/**
 * Applies `op` to `chain`, producing a new chain handle.
 *
 * # Safety
 * `op` and `chain` must be live handles and `out` a valid pointer.
 */
enum PcStatus pc_operator_apply(const struct PcOperator *op,
                                const struct PcChain *chain,
                                struct PcChain **out);

/**
 * Matrix of `op` at source degree `degree` in the export format; `csv`
 * selects CSV over JSON.
 *
 * # Safety
 * `op` must be a live handle and `out` a valid pointer.
 */
enum PcStatus pc_operator_materialize(const struct PcOperator *op,
                                      size_t degree,
                                      size_t basis_cap,
                                      bool csv,
                                      char **out);

/**
 * # Safety
 * `op` must be null or a handle from this library, not yet freed.
 */
void pc_operator_free(struct PcOperator *op);

/**
 * Dimension table `{vertices, max_degree, lambda, regular}` as JSON.
 *
 * # Safety
 * `vs` must be a live handle and `out` a valid pointer.
 */
enum PcStatus pc_dims(const struct PcVertexSet *vs,
                      size_t max_degree,
                      size_t basis_cap,
                      char **out);

/**
 * Runs a verification suite and writes the report JSON. Returns
 * `VerifyFailed` when the report contains a failure; the report is
 * written either way. `vs` may be null for the default vertex sets.
 *
 * # Safety
 * `suite` must be a NUL-terminated string, `vs` null or a live handle,
 * and `out` a valid pointer.
 */
enum PcStatus pc_verify(const char *suite,
                        const struct PcVertexSet *vs,
                        size_t max_degree,
                        uint64_t seed,
                        size_t trials,
                        char **out);

/**
 * Searches for a witness against a regular identity and writes the
 * outcome JSON. Returns `NotFound` when the search is exhausted.
 *
 * # Safety
 * `identity` must be a NUL-terminated string, `vs` a live handle and
 * `out` a valid pointer.
 */
enum PcStatus pc_counterexample(const char *identity,
                                const struct PcVertexSet *vs,
                                size_t max_degree,
                                char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PATHCALC_H */
