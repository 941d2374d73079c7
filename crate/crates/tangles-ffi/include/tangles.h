#ifndef TANGLES_H
#define TANGLES_H

/* Generated by cbindgen from the tangles-ffi crate; do not edit by hand. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Width parameter selector: each one names both the number and the family
 * whose tangle/tree duality defines it.
 */
typedef enum TanglesParameter {
  /**
   * Tree-width: bags over vertex separations.
   */
  TANGLES_PARAMETER_TREE_WIDTH = 0,
  /**
   * Path-width: at most two bags per star.
   */
  TANGLES_PARAMETER_PATH_WIDTH = 1,
  /**
   * Branch-width: star covers of vertices and edges.
   */
  TANGLES_PARAMETER_BRANCH_WIDTH = 2,
  /**
   * Carving-width: covering stars over edge-cut bipartitions.
   */
  TANGLES_PARAMETER_CARVING_WIDTH = 3,
  /**
   * Rank-width: covering stars over GF(2) cut-rank bipartitions.
   */
  TANGLES_PARAMETER_RANK_WIDTH = 4,
} TanglesParameter;

/**
 * Status code returned by every fallible function.
 */
typedef enum TanglesStatus {
  /**
   * Success.
   */
  TANGLES_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TANGLES_STATUS_NULL_ARGUMENT = 1,
  /**
   * The input could not be parsed or is out of the supported range.
   */
  TANGLES_STATUS_INVALID_INPUT = 2,
  /**
   * The tree search exceeded the node cap.
   */
  TANGLES_STATUS_CAP_EXCEEDED = 3,
  /**
   * An internal invariant failed; always a bug worth reporting.
   */
  TANGLES_STATUS_INTERNAL = 4,
} TanglesStatus;

/**
 * Opaque graph handle; create with `tangles_graph_new` or
 * `tangles_graph_parse`, release with `tangles_graph_free`.
 */
typedef struct TanglesGraph {
  uint8_t _private[0];
} TanglesGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string; do not free.
 */
const char *tangles_version(void);

/**
 * Message for the most recent failure on this thread; owned by the
 * library, valid until the next failing call.  Empty when nothing failed.
 */
const char *tangles_last_error(void);

/**
 * Release a string obtained from a `char **` out-parameter.
 */
void tangles_string_free(char *s);

/**
 * Build a graph on `n` vertices from `n_edges` pairs laid out flat as
 * u0, v0, u1, v1, …  Writes the new handle to `out`.
 */
enum TanglesStatus tangles_graph_new(uint32_t n,
                                     const uint32_t *edges,
                                     size_t n_edges,
                                     struct TanglesGraph **out);

/**
 * Parse a graph from text: JSON (`{"n": 4, "edges": [[0,1], …]}`) or
 * whitespace-separated `u v` edge lines.
 */
enum TanglesStatus tangles_graph_parse(const char *text, struct TanglesGraph **out);

/**
 * Release a graph handle; a null handle is ignored.
 */
void tangles_graph_free(struct TanglesGraph *g);

/**
 * Vertex and edge counts of a graph.
 */
enum TanglesStatus tangles_graph_counts(const struct TanglesGraph *g,
                                        uint32_t *out_vertices,
                                        uint32_t *out_edges);

/**
 * Compute a width parameter exactly.  `max_nodes` caps the certificate
 * tree search (0 means the library default of one million nodes).
 */
enum TanglesStatus tangles_width(const struct TanglesGraph *g,
                                 enum TanglesParameter parameter,
                                 size_t max_nodes,
                                 int64_t *out_value);

/**
 * The largest k for which the graph has a tangle of order k.
 */
enum TanglesStatus tangles_tangle_number(const struct TanglesGraph *g, uint32_t *out_value);

/**
 * Decide which dual certificate exists for the parameter's family on the
 * order-k separation system: writes 1 to `out_is_tangle` for a tangle,
 * 0 for a tree over the family.  `out_json` (nullable) receives the full
 * certificate; release it with `tangles_string_free`.
 */
enum TanglesStatus tangles_duality(const struct TanglesGraph *g,
                                   enum TanglesParameter parameter,
                                   uint32_t k,
                                   size_t max_nodes,
                                   int *out_is_tangle,
                                   char **out_json);

/**
 * Tree-width of a matroid given as a JSON recipe:
 * `{"kind":"graphic","graph":{…}}`, `{"kind":"gf2","columns":[[0,1],…]}`,
 * or `{"kind":"uniform","r":2,"n":4}`.
 */
enum TanglesStatus tangles_matroid_treewidth(const char *recipe_json,
                                             size_t max_nodes,
                                             int64_t *out_value);

/**
 * The matroid analogue of `tangles_duality`: connectivity-norm stars
 * against the order-k connectivity system of a matroid recipe.
 */
enum TanglesStatus tangles_matroid_duality(const char *recipe_json,
                                           uint32_t k,
                                           size_t max_nodes,
                                           int *out_is_tangle,
                                           char **out_json);

/**
 * Cluster a PGM image (P2 or P5 bytes): writes 1 to `out_coherent` when a
 * region of coherence ≥ k exists, 0 when the grid segments into a laminar
 * set of cheaper lines.  `out_json` (nullable) receives the certificate.
 */
enum TanglesStatus tangles_cluster_pgm(const uint8_t *bytes,
                                       size_t len,
                                       uint32_t k,
                                       size_t max_nodes,
                                       int *out_coherent,
                                       char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TANGLES_H */
