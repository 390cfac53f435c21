#ifndef CIRCNOC_H
#define CIRCNOC_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CircnocAlgorithm {
  CIRCNOC_ALGORITHM_TABLE = 0,
  CIRCNOC_ALGORITHM_CLOCKWISE = 1,
  CIRCNOC_ALGORITHM_ADAPTIVE = 2,
} CircnocAlgorithm;

/**
 * Left seed of adaptive routing.
 */
typedef enum CircnocLeftSeed {
  CIRCNOC_LEFT_SEED_CORRECTED = 0,
  CIRCNOC_LEFT_SEED_AS_PRINTED = 1,
} CircnocLeftSeed;

typedef enum CircnocStatus {
  CIRCNOC_STATUS_OK = 0,
  CIRCNOC_STATUS_INVALID_ARGUMENT = 1,
  CIRCNOC_STATUS_NULL_POINTER = 2,
  CIRCNOC_STATUS_NODE_OUT_OF_RANGE = 3,
  CIRCNOC_STATUS_DISCONNECTED = 4,
  CIRCNOC_STATUS_LIVELOCK = 5,
  CIRCNOC_STATUS_BUFFER_TOO_SMALL = 6,
  CIRCNOC_STATUS_INTERNAL = 7,
} CircnocStatus;

/**
 * Opaque topology handle.
 */
typedef struct CircnocGraph CircnocGraph;

/**
 * Opaque router handle.
 */
typedef struct CircnocRouter CircnocRouter;

typedef struct CircnocMetrics {
  size_t diameter;
  double avg_distance;
  size_t edge_count;
  size_t max_degree;
} CircnocMetrics;

typedef struct CircnocMemory {
  uint32_t payload_bits;
  uint64_t table_bits;
  uint64_t clockwise_bits;
  uint64_t adaptive_bits;
} CircnocMemory;

typedef struct CircnocCapacity {
  size_t max_routers;
  /**
   * 0 when ALMs run out first, 1 for registers.
   */
  uint8_t register_bound;
  double alm_used;
  double reg_used;
} CircnocCapacity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *circnoc_status_str(enum CircnocStatus status);

/**
 * Copies the calling thread's last error message into `buf` as a
 * NUL-terminated string, truncating to `cap - 1` bytes. Returns the full
 * message length without the terminator.
 *
 * # Safety
 * `buf` must be null or point to `cap` writable bytes.
 */
size_t circnoc_last_error(char *buf, size_t cap);

/**
 * Circulant C(n; gens[0], ..., gens[len - 1]).
 *
 * # Safety
 * `gens` must point to `len` values and `out` must be writable.
 */
enum CircnocStatus circnoc_graph_circulant(size_t n,
                                           const size_t *gens,
                                           size_t len,
                                           struct CircnocGraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum CircnocStatus circnoc_graph_mesh(size_t rows, size_t cols, struct CircnocGraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum CircnocStatus circnoc_graph_torus(size_t rows, size_t cols, struct CircnocGraph **out);

/**
 * # Safety
 * `graph` must be null or a handle from this library not yet freed.
 */
void circnoc_graph_free(struct CircnocGraph *graph);

/**
 * Node count, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t circnoc_graph_node_count(const struct CircnocGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle and `out` writable.
 */
enum CircnocStatus circnoc_graph_metrics(const struct CircnocGraph *graph,
                                         struct CircnocMetrics *out);

/**
 * Router on C(n; 1, s2).
 *
 * # Safety
 * `out` must be writable.
 */
enum CircnocStatus circnoc_router_new(size_t n,
                                      size_t s2,
                                      enum CircnocAlgorithm algorithm,
                                      enum CircnocLeftSeed seed,
                                      size_t max_cycles,
                                      struct CircnocRouter **out);

/**
 * # Safety
 * `router` must be null or a handle from this library not yet freed.
 */
void circnoc_router_free(struct CircnocRouter *router);

/**
 * Routes `src -> dst` and writes the visited nodes, both endpoints
 * included, into `nodes`. `*len` receives the node count; when it exceeds
 * `cap` nothing is written and `BufferTooSmall` is returned. A `hop_limit`
 * of 0 means 2n.
 *
 * # Safety
 * `router` must be a live handle, `nodes` must hold `cap` values (or be null
 * with `cap` 0) and `len` must be writable.
 */
enum CircnocStatus circnoc_router_trace(const struct CircnocRouter *router,
                                        size_t src,
                                        size_t dst,
                                        size_t hop_limit,
                                        size_t *nodes,
                                        size_t cap,
                                        size_t *len);

/**
 * Efficiency criterion K from `source`.
 *
 * # Safety
 * `router` must be a live handle and `k` writable.
 */
enum CircnocStatus circnoc_router_efficiency(const struct CircnocRouter *router,
                                             size_t source,
                                             double *k);

/**
 * Memory models for an `n`-node network of four-port routers.
 *
 * # Safety
 * `out` must be writable.
 */
enum CircnocStatus circnoc_memory(size_t n, struct CircnocMemory *out);

/**
 * Router capacity of a chip with `alm_total` ALMs and `reg_total`
 * registers, of which `budget` (in (0, 1]) is available.
 *
 * # Safety
 * `out` must be writable.
 */
enum CircnocStatus circnoc_capacity(enum CircnocAlgorithm algorithm,
                                    uint64_t alm_total,
                                    uint64_t reg_total,
                                    double budget,
                                    struct CircnocCapacity *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CIRCNOC_H */
