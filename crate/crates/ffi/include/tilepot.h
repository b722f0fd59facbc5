#ifndef TILEPOT_H
#define TILEPOT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes; the first four match the command-line exit codes.
typedef enum TpStatus {
  TP_STATUS_OK = 0,
  // The question was settled negatively.
  TP_STATUS_NO = 1,
  TP_STATUS_ERROR = 2,
  // The search budget ran out first.
  TP_STATUS_INDETERMINATE = 3,
  TP_STATUS_NULL_POINTER = 4,
  TP_STATUS_INVALID_UTF8 = 5,
} TpStatus;

// Opaque graph handle.
typedef struct TpGraph TpGraph;

// Opaque pot handle.
typedef struct TpPot TpPot;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until the
// next call into the library from the same thread.
const char *tp_last_error(void);

// Library version as a static NUL-terminated string.
const char *tp_version(void);

// Releases a string returned by the library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void tp_string_free(char *s);

// Parses a pot in the text grammar or JSON form.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum TpStatus tp_pot_parse(const char *text, struct TpPot **out);

// # Safety
// `pot` must come from `tp_pot_parse` and not have been freed; NULL is ignored.
void tp_pot_free(struct TpPot *pot);

// Number of tile types, or 0 for NULL.
//
// # Safety
// `pot` must be a live handle or NULL.
uintptr_t tp_pot_tile_count(const struct TpPot *pot);

// Number of bond-edge types, or 0 for NULL.
//
// # Safety
// `pot` must be a live handle or NULL.
uintptr_t tp_pot_symbol_count(const struct TpPot *pot);

// Text form of the pot.
//
// # Safety
// `pot` must be a live handle; `out` must be writable.
enum TpStatus tp_pot_render(const struct TpPot *pot, char **out);

// Parses `{"vertices": n, "edges": [[u, v], ...]}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum TpStatus tp_graph_from_json(const char *json, struct TpGraph **out);

// Generates a family member, e.g. `("square_tube", {4, 5}, 2)` or `("cube", NULL, 0)`.
//
// # Safety
// `name` must be a NUL-terminated string; `dims` must point to `ndims`
// values (or be NULL when `ndims` is 0); `out` must be writable.
enum TpStatus tp_graph_family(const char *name,
                              const uintptr_t *dims,
                              uintptr_t ndims,
                              struct TpGraph **out);

// # Safety
// `graph` must come from this library and not have been freed; NULL is ignored.
void tp_graph_free(struct TpGraph *graph);

// # Safety
// `graph` must be a live handle or NULL.
uintptr_t tp_graph_vertex_count(const struct TpGraph *graph);

// # Safety
// `graph` must be a live handle or NULL.
uintptr_t tp_graph_edge_count(const struct TpGraph *graph);

// # Safety
// `graph` must be a live handle; `out` must be writable.
enum TpStatus tp_graph_to_json(const struct TpGraph *graph, char **out);

// Spectrum as JSON: consistency, free count, constants and basis as
// rational strings. `TP_STATUS_NO` when the spectrum is empty.
//
// # Safety
// `pot` must be a live handle; `out` must be writable.
enum TpStatus tp_spectrum_json(const struct TpPot *pot, char **out);

// Minimum-order witnesses up to `max_order` as
// `{"free_count": f, "witnesses": [{"order": n, "counts": [...]}]}`.
// `TP_STATUS_NO` (with the JSON still written) when there are none.
//
// # Safety
// `pot` must be a live handle; `out` must be writable.
enum TpStatus tp_min_order_json(const struct TpPot *pot,
                                uint64_t max_order,
                                bool fallback,
                                uint64_t budget,
                                char **out);

// Searches for a realization of `graph`. On success, when `certificate` is
// not NULL, it receives `{"tiles": [...], "edge_labels": [[edge, symbol, from]]}`.
//
// # Safety
// Handles must be live; `certificate` must be writable or NULL.
enum TpStatus tp_realize(const struct TpPot *pot,
                         const struct TpGraph *graph,
                         uint64_t budget,
                         char **certificate);

// Checks scenario `level` (1, 2 or 3): `TP_STATUS_OK` when it holds,
// `TP_STATUS_NO` when it fails.
//
// # Safety
// Handles must be live.
enum TpStatus tp_scenario(const struct TpPot *pot,
                          const struct TpGraph *graph,
                          uint8_t level,
                          uint64_t budget);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TILEPOT_H */
