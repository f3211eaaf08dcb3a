#ifndef TWISTED_GEOM_H
#define TWISTED_GEOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum TgStatus {
  TG_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  TG_STATUS_NULL_POINTER = 1,
  /**
   * Bad parameters: not a prime power, e out of range, unknown check name.
   */
  TG_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The operation is not available for these parameters.
   */
  TG_STATUS_UNSUPPORTED = 3,
  /**
   * Index out of range.
   */
  TG_STATUS_OUT_OF_RANGE = 4,
  /**
   * Unexpected failure inside the library (including caught panics).
   */
  TG_STATUS_INTERNAL = 5,
} TgStatus;

/**
 * A design built by `tg_pg_design` or `tg_jt_design`.
 */
typedef struct TgDesign TgDesign;

/**
 * A graph built by one of the `tg_*_graph` constructors.
 */
typedef struct TgGraph TgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into the library from the same thread; do not free.
 */
const char *tg_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tg_version(void);

/**
 * Twisted Grassmann graph over GF(q) with parameter e (e >= 2), standard polarity.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum TgStatus tg_twisted_graph(uint32_t q, uint32_t e, struct TgGraph **out);

/**
 * Grassmann graph J_q(n, k).
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum TgStatus tg_grassmann_graph(uint32_t q, uint32_t n, uint32_t k, struct TgGraph **out);

/**
 * Geometric design of points and (e+1)-spaces of PG(2e, q); e >= 1.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum TgStatus tg_pg_design(uint32_t q, uint32_t e, struct TgDesign **out);

/**
 * Jungnickel-Tonchev design; e >= 2.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum TgStatus tg_jt_design(uint32_t q, uint32_t e, struct TgDesign **out);

/**
 * # Safety
 * `g` must be NULL or a handle from this library that has not been freed.
 */
void tg_graph_free(struct TgGraph *g);

/**
 * # Safety
 * `d` must be NULL or a handle from this library that has not been freed.
 */
void tg_design_free(struct TgDesign *d);

/**
 * Vertex count, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t tg_graph_vertex_count(const struct TgGraph *g);

/**
 * Edge count, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t tg_graph_edge_count(const struct TgGraph *g);

/**
 * # Safety
 * `g` must be a live handle; `out` valid for a write.
 */
enum TgStatus tg_graph_degree(const struct TgGraph *g, size_t v, size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` valid for a write.
 */
enum TgStatus tg_graph_is_adjacent(const struct TgGraph *g, size_t u, size_t v, bool *out);

/**
 * Point count, or 0 for NULL.
 *
 * # Safety
 * `d` must be NULL or a live handle.
 */
size_t tg_design_point_count(const struct TgDesign *d);

/**
 * Block count, or 0 for NULL.
 *
 * # Safety
 * `d` must be NULL or a live handle.
 */
size_t tg_design_block_count(const struct TgDesign *d);

/**
 * Copies the sorted points of block `i` into `buf`. `*len` holds the
 * capacity on entry and the block size on return; if the capacity is too
 * small nothing is copied and `OutOfRange` is returned with `*len` set.
 *
 * # Safety
 * `d` must be a live handle, `len` valid for read/write and `buf` valid for
 * `*len` writes (may be NULL when `*len` is 0).
 */
enum TgStatus tg_design_block(const struct TgDesign *d, size_t i, uint32_t *buf, size_t *len);

/**
 * graph6 encoding (no trailing newline). Free with `tg_string_free`.
 *
 * # Safety
 * `g` must be a live handle; `out` valid for a write.
 */
enum TgStatus tg_graph_to_graph6(const struct TgGraph *g, char **out);

/**
 * JSON `{vertices, edges, labels}`. Free with `tg_string_free`.
 *
 * # Safety
 * `g` must be a live handle; `out` valid for a write.
 */
enum TgStatus tg_graph_to_json(const struct TgGraph *g, char **out);

/**
 * JSON `{v, blocks}`. Free with `tg_string_free`.
 *
 * # Safety
 * `d` must be a live handle; `out` valid for a write.
 */
enum TgStatus tg_design_to_json(const struct TgDesign *d, char **out);

/**
 * 0/1 incidence matrix as CSV, one row per block. Free with `tg_string_free`.
 *
 * # Safety
 * `d` must be a live handle; `out` valid for a write.
 */
enum TgStatus tg_design_to_incidence_csv(const struct TgDesign *d, char **out);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a string from this library that has not been freed.
 */
void tg_string_free(char *s);

/**
 * Runs a verification check (`thm1`, `drg`, `design`, `spectrum`,
 * `aut-sample`, `aut-exhaustive`, `prank` or `all`) and returns its JSON
 * report. `samples` of 0 selects the default sample size. A failed check
 * still returns `Ok`; inspect `*passed`.
 *
 * # Safety
 * `check` must be a NUL-terminated string; `report` and `passed` valid for writes.
 */
enum TgStatus tg_verify(const char *check,
                        uint32_t q,
                        uint32_t e,
                        uint64_t seed,
                        uint32_t samples,
                        char **report,
                        bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWISTED_GEOM_H */
