#ifndef HYPCONE_H
#define HYPCONE_H

/* Generated by cbindgen from hypcone-ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HcStatus {
  HC_STATUS_OK = 0,
  HC_STATUS_NULL_POINTER = 1,
  /*
   A precondition of the operation failed.
   */
  HC_STATUS_INVALID_ARGUMENT = 2,
  /*
   A bounded search ended without a result.
   */
  HC_STATUS_SEARCH_EXHAUSTED = 3,
  HC_STATUS_PARSE_ERROR = 4,
  /*
   The output buffer is too small; the needed length was written.
   */
  HC_STATUS_BUFFER_TOO_SMALL = 5,
  HC_STATUS_PANIC = 6,
} HcStatus;

typedef enum HcIsoKind {
  HC_ISO_KIND_IDENTITY = 0,
  HC_ISO_KIND_ELLIPTIC = 1,
  HC_ISO_KIND_PARABOLIC = 2,
  HC_ISO_KIND_HYPERBOLIC = 3,
} HcIsoKind;

typedef enum HcReduction {
  HC_REDUCTION_PANTS = 0,
  HC_REDUCTION_ELLIPTIC = 1,
} HcReduction;

typedef enum HcModel {
  HC_MODEL_DISK = 0,
  HC_MODEL_HALFPLANE = 1,
} HcModel;

/*
 Opaque glued genus-2 domain.
 */
typedef struct HcGlued HcGlued;

/*
 Opaque surface group representation.
 */
typedef struct HcRep HcRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message describing the last failure on this thread. Valid until the next
 call into the library from the same thread.
 */
const char *hc_last_error(void);

const char *hc_version(void);

/*
 `x² + y² + z² − xyz − 2`.

 # Safety
 `out` must be valid for one write.
 */
enum HcStatus hc_kappa(double x, double y, double z, double *out);

/*
 Classifies the isometry with row-major entries `m[0..4]`. `param`
 receives the rotation angle, translation length or parabolic sense (±1).

 # Safety
 `m` must point to four doubles; `kind` and `param` must be writable.
 */
enum HcStatus hc_classify(const double *m, enum HcIsoKind *kind, double *param);

/*
 Pants-type or elliptic-type decision for a character with `κ > 2`.

 # Safety
 `kind` must be writable and `witness` must hold three doubles.
 */
enum HcStatus hc_reduce(double x,
                        double y,
                        double z,
                        size_t max_iter,
                        enum HcReduction *kind,
                        double *witness);

/*
 Builds a representation from `2·genus + boundary` row-major matrices in
 presentation order `G0, H0, …, C0, …`.

 # Safety
 `entries` must hold `4 · count` doubles; `out` must be writable.
 */
enum HcStatus hc_rep_new(size_t genus,
                         size_t boundary,
                         const double *entries,
                         size_t count,
                         struct HcRep **out);

/*
 Parses a representation document (the CLI's JSON format).

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum HcStatus hc_rep_from_json(const char *json, struct HcRep **out);

/*
 # Safety
 `rep` must come from this library and not be used afterwards.
 */
void hc_rep_free(struct HcRep *rep);

/*
 # Safety
 `rep` must be a live handle and `out` writable.
 */
enum HcStatus hc_euler_class(const struct HcRep *rep, int64_t *out);

/*
 Glues a genus-2 representation with Euler class ±1 and elliptic or
 parabolic commutators into one octagon with a single cone point.

 # Safety
 `rep` must be a live handle and `out` writable.
 */
enum HcStatus hc_glue_genus2(const struct HcRep *rep, struct HcGlued **out);

/*
 # Safety
 `glued` must come from this library and not be used afterwards.
 */
void hc_glued_free(struct HcGlued *glued);

/*
 Cone angle, area and vertex orbit size of a glued domain. Any output
 pointer may be null.

 # Safety
 `glued` must be a live handle; non-null outputs must be writable.
 */
enum HcStatus hc_glued_summary(const struct HcGlued *glued,
                               double *cone_angle,
                               double *area,
                               size_t *vertex_orbit);

/*
 Writes the octagon vertices as `(x, y)` pairs in the upper half-plane;
 ideal vertices have `y = 0`, or `x = NaN, y = +∞` at infinity. `len`
 holds the capacity in pairs on entry and the vertex count on return.

 # Safety
 `glued` must be a live handle, `len` writable, and `xy` valid for
 `2 · *len` doubles (it may be null when `*len` is 0).
 */
enum HcStatus hc_glued_vertices(const struct HcGlued *glued, double *xy, size_t *len);

/*
 SVG picture of the glued octagon. Free the string with
 [`hc_string_free`].

 # Safety
 `glued` must be a live handle and `out` writable.
 */
enum HcStatus hc_glued_svg(const struct HcGlued *glued, enum HcModel model, char **out);

/*
 # Safety
 `s` must come from this library and not be used afterwards.
 */
void hc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPCONE_H */
