#ifndef SUBDIV_H
#define SUBDIV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SUBDIV_STATUS_OK = 0,
  SUBDIV_STATUS_NULL_POINTER = 1,
  SUBDIV_STATUS_INVALID_ARGUMENT = 2,
  SUBDIV_STATUS_PARSE = 3,
  SUBDIV_STATUS_IO = 4,
  SUBDIV_STATUS_BUDGET_EXCEEDED = 5,
  SUBDIV_STATUS_CAP_EXCEEDED = 6,
  SUBDIV_STATUS_PRECONDITION = 7,
  SUBDIV_STATUS_PANIC = 8,
} SubdivStatus;

/**
 * Opaque host graph.
 */
typedef struct SubdivGraph SubdivGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *subdiv_last_error(void);

/**
 * Library version, static storage.
 */
const char *subdiv_version(void);

/**
 * Builds a graph on `n` vertices from `edge_count` pairs in `edges`.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values; `out` must be writable.
 */
SubdivStatus subdiv_graph_from_edges(size_t n,
                                     const size_t *edges,
                                     size_t edge_count,
                                     SubdivGraph **out);

/**
 * Reads an edge-list file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
SubdivStatus subdiv_graph_from_file(const char *path, SubdivGraph **out);

/**
 * Releases a graph. NULL is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void subdiv_graph_free(SubdivGraph *g);

/**
 * # Safety
 * `g` must be a live handle or NULL (which yields 0).
 */
size_t subdiv_graph_vertex_count(const SubdivGraph *g);

/**
 * # Safety
 * `g` must be a live handle or NULL (which yields 0).
 */
size_t subdiv_graph_edge_count(const SubdivGraph *g);

/**
 * Writes the edge list of `g` as `2 * edge_count` ids into `buf`, which must
 * hold at least that many values.
 *
 * # Safety
 * `buf` must be writable for `capacity` values.
 */
SubdivStatus subdiv_graph_edges(const SubdivGraph *g, size_t *buf, size_t capacity);

/**
 * Builds `F^s` for the given pattern.
 *
 * # Safety
 * `pattern_edges` must point to `3 * pattern_edge_count` values; `out` must be writable.
 */
SubdivStatus subdiv_subdivide(size_t pattern_n,
                              const size_t *pattern_edges,
                              size_t pattern_edge_count,
                              size_t s,
                              SubdivGraph **out);

/**
 * Number of `u`-`v` walks of length `i`, as a decimal string.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
SubdivStatus subdiv_count_walks(const SubdivGraph *g, size_t u, size_t v, size_t i, char **out);

/**
 * Minimum and maximum degree.
 *
 * # Safety
 * `g` must be a live handle; both outputs must be writable.
 */
SubdivStatus subdiv_degree_profile(const SubdivGraph *g, size_t *min_degree, size_t *max_degree);

/**
 * Exact search for `F^s` in `g`. Sets `*found`; when found, `*cert_json`
 * receives the certificate (otherwise NULL).
 *
 * # Safety
 * `g` must be a live handle; pattern pointers as in [`subdiv_subdivide`];
 * `found` and `cert_json` must be writable.
 */
SubdivStatus subdiv_find_exact(const SubdivGraph *g,
                               size_t pattern_n,
                               const size_t *pattern_edges,
                               size_t pattern_edge_count,
                               size_t s,
                               uint64_t budget,
                               bool *found,
                               char **cert_json);

/**
 * Exact `ex(n, F^s)`. `result_json` may be NULL; otherwise it receives the
 * full result including a witness.
 *
 * # Safety
 * Pattern pointers as in [`subdiv_subdivide`]; `value` must be writable.
 */
SubdivStatus subdiv_ex_exact(size_t n,
                             size_t pattern_n,
                             const size_t *pattern_edges,
                             size_t pattern_edge_count,
                             size_t s,
                             size_t cap,
                             size_t *value,
                             char **result_json);

/**
 * Whether `u` and `v` are distant at parameter `k` and minimum degree `delta`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
SubdivStatus subdiv_is_distant(const SubdivGraph *g,
                               size_t u,
                               size_t v,
                               size_t k,
                               double delta,
                               bool *out);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void subdiv_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SUBDIV_H */
