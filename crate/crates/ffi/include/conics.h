#ifndef CONICS_H
#define CONICS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ConicsStatus {
  CONICS_STATUS_OK = 0,
  CONICS_STATUS_NULL_POINTER = 1,
  CONICS_STATUS_INVALID_INPUT = 2,
  CONICS_STATUS_INVALID_FIELD = 3,
  CONICS_STATUS_DEGENERATE_CURVE = 4,
  CONICS_STATUS_NOT_ON_CURVE = 5,
  CONICS_STATUS_BUDGET_EXHAUSTED = 6,
  CONICS_STATUS_EXTENSION_EXHAUSTED = 7,
  CONICS_STATUS_CERTIFICATE_FAILURE = 8,
  CONICS_STATUS_GENERICITY_FAILURE = 9,
  CONICS_STATUS_INTERNAL = 10,
} ConicsStatus;

typedef enum ConicsVertexTag {
  CONICS_VERTEX_TAG_GENERAL = 0,
  CONICS_VERTEX_TAG_ON_CURVE = 1,
  CONICS_VERTEX_TAG_SPECIAL = 2,
} ConicsVertexTag;

// A space curve over a prime field.
typedef struct ConicsCurve ConicsCurve;

// A finished scenario report.
typedef struct ConicsReport ConicsReport;

typedef struct ConicsWitness {
  uint64_t p;
  uint64_t a;
  uint64_t b;
  uint64_t qx;
  uint64_t qy;
  uint64_t group_order;
} ConicsWitness;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread; empty if none. Valid until
// the next failing call on the same thread.
const char *conics_last_error(void);

// The elliptic normal quartic of y^2 = x^3 + a x + b over F_p.
enum ConicsStatus conics_curve_weierstrass(uint64_t p,
                                           int64_t a,
                                           int64_t b,
                                           struct ConicsCurve **out);

// The twisted cubic (s^3 : s^2 t : s t^2 : t^3) over F_p.
enum ConicsStatus conics_curve_twisted_cubic(uint64_t p, struct ConicsCurve **out);

// Releases a curve; null is ignored.
//
// # Safety
// `curve` must be null or a handle from this library not yet released.
void conics_curve_free(struct ConicsCurve *curve);

// Degree of the curve, or 0 for a null handle.
//
// # Safety
// `curve` must be null or a live handle.
uint32_t conics_curve_degree(const struct ConicsCurve *curve);

// Genus of the curve, or 0 for a null handle.
//
// # Safety
// `curve` must be null or a live handle.
uint32_t conics_curve_genus(const struct ConicsCurve *curve);

// Classifies the vertex `point[0..4]` (residues mod p).
//
// # Safety
// `curve` must be a live handle, `point` must point to 4 values, and the
// output pointers must be writable.
enum ConicsStatus conics_classify_vertex(const struct ConicsCurve *curve,
                                         const uint64_t *point,
                                         enum ConicsVertexTag *tag,
                                         uintptr_t *witness);

// First (p, a, b, q) with q of exact order 16, searching primes in
// [min_prime, max_prime] and examining at most `budget` candidates.
//
// # Safety
// `out` must be writable.
enum ConicsStatus conics_find_order16(uint64_t min_prime,
                                      uint64_t max_prime,
                                      uint64_t budget,
                                      struct ConicsWitness *out);

// Runs a named scenario with default settings and the given seed.
//
// # Safety
// `name` must be a NUL-terminated string and `out` writable.
enum ConicsStatus conics_run_scenario(const char *name, uint64_t seed, struct ConicsReport **out);

// Report text; owned by the report.
//
// # Safety
// `report` must be null or a live handle.
const char *conics_report_text(const struct ConicsReport *report);

// # Safety
// `report` must be null or a live handle.
uintptr_t conics_report_passed(const struct ConicsReport *report);

// # Safety
// `report` must be null or a live handle.
uintptr_t conics_report_failed(const struct ConicsReport *report);

// Releases a report; null is ignored.
//
// # Safety
// `report` must be null or a handle from this library not yet released.
void conics_report_free(struct ConicsReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONICS_H */
