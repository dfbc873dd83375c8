#ifndef CONNLAB_H
#define CONNLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Operation kinds for [`connlab_session_apply`].
#define CONNLAB_OP_INSERT 0

#define CONNLAB_OP_QUERY 1

// Result code of every fallible call.
typedef enum ConnlabStatus {
  CONNLAB_STATUS_OK = 0,
  CONNLAB_STATUS_NULL_POINTER = 1,
  CONNLAB_STATUS_INVALID_ARGUMENT = 2,
  CONNLAB_STATUS_MALFORMED_INPUT = 3,
  CONNLAB_STATUS_CONFIG = 4,
  CONNLAB_STATUS_IO = 5,
  CONNLAB_STATUS_VERIFICATION = 6,
  CONNLAB_STATUS_NO_CONVERGENCE = 7,
  // A Rust panic was caught at the boundary.
  CONNLAB_STATUS_INTERNAL = 8,
} ConnlabStatus;

// Opaque undirected graph.
typedef struct ConnlabGraph ConnlabGraph;

// Opaque batch-incremental connectivity session.
typedef struct ConnlabSession ConnlabSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer
// stays valid until the next call on the same thread.
const char *connlab_last_error(void);

// Checks a spec string of the form `sample+finish[+find[+splice]]`.
//
// # Safety
// `spec` must be a NUL-terminated string or null.
enum ConnlabStatus connlab_spec_validate(const char *spec);

// Whether the spec can build a spanning forest or run incrementally.
// Writes 1 or 0 to `out`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum ConnlabStatus connlab_spec_is_root_based(const char *spec, uint8_t *out);

// Builds a graph on `n` vertices from `m` edges `(src[i], dst[i])`.
// Duplicates and self-loops are dropped.
//
// # Safety
// `src` and `dst` must point to `m` readable values; `out` must be writable.
enum ConnlabStatus connlab_graph_from_edges(size_t n,
                                            const uint32_t *src,
                                            const uint32_t *dst,
                                            size_t m,
                                            struct ConnlabGraph **out);

// Loads a text edge list or binary CSR file.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum ConnlabStatus connlab_graph_load(const char *path, struct ConnlabGraph **out);

// Vertex count, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t connlab_graph_num_vertices(const struct ConnlabGraph *g);

// Undirected edge count, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t connlab_graph_num_edges(const struct ConnlabGraph *g);

// # Safety
// `g` must be null or a handle not freed before.
void connlab_graph_free(struct ConnlabGraph *g);

// Connected components. Writes the smallest vertex id of each vertex's
// component to `labels` (capacity `n`, the vertex count) and the number of
// components to `components` when it is not null. `workers` 0 uses
// `CONN_LAB_THREADS` or every core.
//
// # Safety
// `g` must be a live handle, `spec` a NUL-terminated string, `labels`
// writable for `n` values.
enum ConnlabStatus connlab_static_connectivity(const struct ConnlabGraph *g,
                                               const char *spec,
                                               uint64_t seed,
                                               size_t workers,
                                               uint32_t *labels,
                                               size_t n,
                                               size_t *components);

// Spanning forest. Writes the forest's edges to `eu[i], ev[i]` (each of
// capacity `n`, the vertex count) and their number to `edges`. The spec
// must be root-based.
//
// # Safety
// `g` must be a live handle, `spec` a NUL-terminated string, `eu` and `ev`
// writable for `n` values, `edges` writable.
enum ConnlabStatus connlab_spanning_forest(const struct ConnlabGraph *g,
                                           const char *spec,
                                           uint64_t seed,
                                           size_t workers,
                                           uint32_t *eu,
                                           uint32_t *ev,
                                           size_t n,
                                           size_t *edges);

// Starts an empty incremental session. The spec must be root-based and
// `racy` is only accepted for union-find finishes.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum ConnlabStatus connlab_session_new(const char *spec,
                                       uint64_t seed,
                                       size_t workers,
                                       bool racy,
                                       struct ConnlabSession **out);

// Applies one batch of `len` operations: `kinds[i]` is
// `CONNLAB_OP_INSERT` or `CONNLAB_OP_QUERY` on `(u[i], v[i])`. Inserts of
// the batch are visible to its queries. `results[i]` receives 1 for a
// connected query pair and 0 otherwise (always 0 for inserts); it may be
// null if no answers are wanted.
//
// # Safety
// `s` must be a live handle; the arrays must hold `len` values.
enum ConnlabStatus connlab_session_apply(struct ConnlabSession *s,
                                         const uint8_t *kinds,
                                         const uint32_t *u,
                                         const uint32_t *v,
                                         size_t len,
                                         uint8_t *results);

// Number of vertices the session has seen (one past the largest id).
//
// # Safety
// `s` must be null or a live handle.
size_t connlab_session_num_vertices(const struct ConnlabSession *s);

// Current component labels (smallest id per component). `cap` must be at
// least [`connlab_session_num_vertices`]; the count written goes to `len`.
//
// # Safety
// `s` must be a live handle, `labels` writable for `cap` values, `len`
// writable.
enum ConnlabStatus connlab_session_labels(const struct ConnlabSession *s,
                                          uint32_t *labels,
                                          size_t cap,
                                          size_t *len);

// # Safety
// `s` must be null or a handle not freed before.
void connlab_session_free(struct ConnlabSession *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONNLAB_H */
