#ifndef CURVACHAY_H
#define CURVACHAY_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CurvachayStatus {
  CURVACHAY_STATUS_OK = 0,
  CURVACHAY_STATUS_NULL_POINTER = 1,
  CURVACHAY_STATUS_UTF8 = 2,
  CURVACHAY_STATUS_PARSE = 3,
  CURVACHAY_STATUS_INVALID_INPUT = 4,
  CURVACHAY_STATUS_BUDGET = 5,
  CURVACHAY_STATUS_RADIUS = 6,
  CURVACHAY_STATUS_SINGULAR = 7,
  CURVACHAY_STATUS_INTERNAL = 8,
  CURVACHAY_STATUS_OVERFLOW = 9,
  CURVACHAY_STATUS_PANIC = 10,
} CurvachayStatus;

/**
 * Finite piece of a Cayley graph.
 */
typedef struct CurvachayGraph CurvachayGraph;

/**
 * Parsed presentation.
 */
typedef struct CurvachayPresentation CurvachayPresentation;

/**
 * Exact value with its float. `numerator`/`denominator` are only meaningful
 * when `exact` is nonzero.
 */
typedef struct CurvachayValue {
  double value;
  int32_t exact;
  int64_t numerator;
  int64_t denominator;
} CurvachayValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Owned by the library.
 */
const char *curvachay_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be NULL.
 */
void curvachay_string_free(char *s);

/**
 * Parses `raach { ... }` or `group <...>`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum CurvachayStatus curvachay_presentation_parse(const char *text,
                                                  struct CurvachayPresentation **out);

/**
 * # Safety
 * `p` must come from [`curvachay_presentation_parse`] or be NULL.
 */
void curvachay_presentation_free(struct CurvachayPresentation *p);

/**
 * # Safety
 * Pointers must be valid; free the result with [`curvachay_string_free`].
 */
enum CurvachayStatus curvachay_presentation_to_json(const struct CurvachayPresentation *p,
                                                    char **out);

/**
 * Number of letters in the symmetric generating set of a RAACH.
 *
 * # Safety
 * Pointers must be valid.
 */
enum CurvachayStatus curvachay_letter_count(const struct CurvachayPresentation *p, size_t *out);

/**
 * Closed-form normalized Ollivier curvature of the edge from the identity
 * along letter `letter` (index into the symmetric generating set).
 *
 * # Safety
 * Pointers must be valid.
 */
enum CurvachayStatus curvachay_ollivier_closed_form(const struct CurvachayPresentation *p,
                                                    size_t letter,
                                                    struct CurvachayValue *out);

/**
 * Ball of the given radius around the identity of a RAACH.
 *
 * # Safety
 * Pointers must be valid.
 */
enum CurvachayStatus curvachay_ball(const struct CurvachayPresentation *p,
                                    uint32_t radius,
                                    struct CurvachayGraph **out);

/**
 * # Safety
 * `g` must come from [`curvachay_ball`] or be NULL.
 */
void curvachay_graph_free(struct CurvachayGraph *g);

/**
 * # Safety
 * `g` must be valid. Returns 0 for NULL.
 */
size_t curvachay_graph_vertex_count(const struct CurvachayGraph *g);

/**
 * Index of the neighbour of `v` at position `i`, or `usize::MAX`.
 *
 * # Safety
 * `g` must be valid.
 */
size_t curvachay_graph_neighbor(const struct CurvachayGraph *g, size_t v, size_t i);

/**
 * # Safety
 * Pointers must be valid; free the result with [`curvachay_string_free`].
 */
enum CurvachayStatus curvachay_graph_to_dot(const struct CurvachayGraph *g, char **out);

/**
 * Bakry-Émery curvature at `v`. `normalized` selects the Laplacian.
 *
 * # Safety
 * Pointers must be valid.
 */
enum CurvachayStatus curvachay_bakry_emery(const struct CurvachayGraph *g,
                                           size_t v,
                                           int32_t normalized,
                                           struct CurvachayValue *out);

/**
 * Lin-Lu-Yau curvature of the edge `x ~ y`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum CurvachayStatus curvachay_kappa_lly(const struct CurvachayGraph *g,
                                         size_t x,
                                         size_t y,
                                         struct CurvachayValue *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CURVACHAY_H */
