#ifndef GRAPH1LAP_H
#define GRAPH1LAP_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum G1lStatus {
  G1L_STATUS_OK = 0,
  G1L_STATUS_NULL_POINTER = 1,
  G1L_STATUS_INVALID_ARGUMENT = 2,
  G1L_STATUS_PARSE = 3,
  G1L_STATUS_DISCONNECTED = 4,
  G1L_STATUS_SIZE_GUARD = 5,
  G1L_STATUS_SOLVER = 6,
  G1L_STATUS_PANIC = 7,
} G1lStatus;

/**
 * Opaque graph handle.
 */
typedef struct G1lGraph G1lGraph;

/**
 * Solver settings; obtain defaults from `g1l_ipm_config_default`.
 */
typedef struct G1lIpmConfig {
  double eps;
  size_t max_outer;
  double inner_tol;
  size_t inner_max;
  size_t n_inits;
  uint64_t seed;
} G1lIpmConfig;

/**
 * Exact cut value `num/den` with its decimal.
 */
typedef struct G1lRatio {
  /**
   * False when the sums are not integers; `num` and `den` are then 0.
   */
  bool exact;
  int64_t num;
  int64_t den;
  double value;
} G1lRatio;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy of the last error message on this thread, or NULL. Free with
 * `g1l_string_free`.
 */
char *g1l_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void g1l_string_free(char *s);

struct G1lIpmConfig g1l_ipm_config_default(void);

/**
 * Parse an edge list (`i j [w]` per line, 1-based ids).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum G1lStatus g1l_graph_parse(const char *text, struct G1lGraph **out);

/**
 * Build a named family such as `path:10` or `grid:3,4`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable.
 */
enum G1lStatus g1l_graph_family(const char *spec, struct G1lGraph **out);

/**
 * Build from `m` edges `(u[k], v[k], w[k])` on `n` vertices, 0-based.
 * `w` may be NULL for unit weights.
 *
 * # Safety
 * `u`, `v` and (when non-NULL) `w` must point to `m` elements.
 */
enum G1lStatus g1l_graph_from_edges(size_t n,
                                    const size_t *u,
                                    const size_t *v,
                                    const double *w,
                                    size_t m,
                                    struct G1lGraph **out);

/**
 * # Safety
 * `g` must be NULL or a handle from this library, freed once.
 */
void g1l_graph_free(struct G1lGraph *g);

/**
 * Vertex count, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t g1l_graph_n(const struct G1lGraph *g);

/**
 * Total degree `Σ d_i`, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
double g1l_graph_total_degree(const struct G1lGraph *g);

/**
 * Exact `h_k` for `k ∈ {2, 3}`; `labels` (length n) may be NULL.
 *
 * # Safety
 * `out` must be writable; `labels`, when non-NULL, must hold n entries.
 */
enum G1lStatus g1l_cheeger_h(const struct G1lGraph *g,
                             size_t k,
                             struct G1lRatio *out,
                             size_t *labels);

/**
 * Exact `ρ_k` for `k ∈ {2, 3}`; uncovered vertices get label `SIZE_MAX`.
 *
 * # Safety
 * As for `g1l_cheeger_h`.
 */
enum G1lStatus g1l_cheeger_rho(const struct G1lGraph *g,
                               size_t k,
                               struct G1lRatio *out,
                               size_t *labels);

/**
 * `Î(f) = I(f)/‖f‖_w`.
 *
 * # Safety
 * `f` must point to `len` doubles and `out` be writable.
 */
enum G1lStatus g1l_rayleigh(const struct G1lGraph *g, const double *f, size_t len, double *out);

/**
 * Second eigenvector estimate and best 2-way threshold cut.
 * `vector` and `labels` (length n) may be NULL.
 *
 * # Safety
 * Non-NULL outputs must be writable with the stated lengths.
 */
enum G1lStatus g1l_cluster2(const struct G1lGraph *g,
                            const struct G1lIpmConfig *cfg,
                            double *mu,
                            struct G1lRatio *cut,
                            double *vector,
                            size_t *labels);

/**
 * Second and third eigenvalue estimates and best 3-way threshold cut.
 *
 * # Safety
 * Non-NULL outputs must be writable; `labels` holds n entries.
 */
enum G1lStatus g1l_cluster3(const struct G1lGraph *g,
                            const struct G1lIpmConfig *cfg,
                            double *mu2,
                            double *mu3,
                            struct G1lRatio *cut,
                            size_t *labels);

/**
 * Floating-point eigenpair check; `residual` may be NULL.
 *
 * # Safety
 * `f` must point to `len` doubles; `feasible` must be writable.
 */
enum G1lStatus g1l_verify_eigenpair(const struct G1lGraph *g,
                                    const double *f,
                                    size_t len,
                                    double mu,
                                    double tol,
                                    bool *feasible,
                                    double *residual);

/**
 * JSON report for `mode` ∈ {cluster2, cluster3, oracle, chain}, in the
 * same schema as the command-line tool. Free with `g1l_string_free`.
 *
 * # Safety
 * `mode` must be a NUL-terminated string; `cfg` may be NULL for
 * defaults; `out` must be writable.
 */
enum G1lStatus g1l_report_json(const struct G1lGraph *g,
                               const char *mode,
                               const struct G1lIpmConfig *cfg,
                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPH1LAP_H */
