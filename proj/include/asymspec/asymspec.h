#ifndef ASYMSPEC_ASYMSPEC_H
#define ASYMSPEC_ASYMSPEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ASYMSPEC_BUILDING)
#    define ASYMSPEC_API __declspec(dllexport)
#  else
#    define ASYMSPEC_API __declspec(dllimport)
#  endif
#else
#  define ASYMSPEC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns a status. On failure the message and a JSON detail
 * record of the most recent error on this thread are available through
 * asymspec_last_error / asymspec_last_error_json. Strings returned through
 * char** out-parameters are owned by the caller: release them with
 * asymspec_string_free. */

typedef enum asymspec_status {
  ASYMSPEC_OK = 0,
  ASYMSPEC_ERR_DIMENSION_MISMATCH = 1,
  ASYMSPEC_ERR_BAD_PARAMETER = 2,
  ASYMSPEC_ERR_OUT_OF_RANGE = 3,
  ASYMSPEC_ERR_LENGTH_MISMATCH = 4,
  ASYMSPEC_ERR_PARSE = 5,
  ASYMSPEC_ERR_EXPR = 6,
  ASYMSPEC_ERR_DIVISION_NEAR_ZERO = 7,
  ASYMSPEC_ERR_UNBOUND_VARIABLE = 8,
  ASYMSPEC_ERR_UNRESOLVED_POINT = 9,
  ASYMSPEC_ERR_SINGULAR_ON_CONTOUR = 10,
  ASYMSPEC_ERR_NON_ENCLOSING = 11,
  ASYMSPEC_ERR_SCHEMA = 12,
  ASYMSPEC_ERR_IO = 13,
  ASYMSPEC_ERR_NULL_ARGUMENT = 14,
  ASYMSPEC_ERR_INTERNAL = 99
} asymspec_status;

typedef enum asymspec_verdict {
  ASYMSPEC_HOLDS = 0,
  ASYMSPEC_FAILS = 1,
  ASYMSPEC_INCONCLUSIVE = 2
} asymspec_verdict;

typedef struct asymspec_family asymspec_family;
typedef struct asymspec_grid asymspec_grid;
typedef struct asymspec_expr asymspec_expr;
typedef struct asymspec_field asymspec_field;

typedef struct asymspec_region {
  double center_re;
  double center_im;
  double half_width;
  size_t resolution;
} asymspec_region;

typedef struct asymspec_contour {
  double center_re;
  double center_im;
  double radius;
  size_t nodes;
} asymspec_contour;

ASYMSPEC_API const char* asymspec_version(void);
ASYMSPEC_API const char* asymspec_status_name(asymspec_status status);

/* Empty string when no error has been recorded on this thread. */
ASYMSPEC_API const char* asymspec_last_error(void);
/* {"code", "message"} plus "offset"/"expected" for parse errors and
 * "pointer" for schema errors. "{}" when no error has been recorded. */
ASYMSPEC_API const char* asymspec_last_error_json(void);

ASYMSPEC_API void asymspec_string_free(char* s);

/* 0 restores the default (ASYMSPEC_THREADS or the hardware concurrency). */
ASYMSPEC_API void asymspec_set_threads(size_t n);

/* h grids */
ASYMSPEC_API asymspec_status asymspec_grid_geometric(double h0, double ratio, size_t count,
                                                     size_t tail_window, asymspec_grid** out);
ASYMSPEC_API asymspec_status asymspec_grid_default(asymspec_grid** out);
ASYMSPEC_API size_t asymspec_grid_size(const asymspec_grid* grid);
ASYMSPEC_API void asymspec_grid_free(asymspec_grid* grid);

/* families */
ASYMSPEC_API asymspec_status asymspec_family_from_json(const char* json, asymspec_family** out);
ASYMSPEC_API asymspec_status asymspec_family_load(const char* path, asymspec_family** out);
ASYMSPEC_API asymspec_status asymspec_family_to_json(const asymspec_family* family, char** out);
ASYMSPEC_API size_t asymspec_family_dim(const asymspec_family* family);
/* re and im receive dim*dim row-major entries. */
ASYMSPEC_API asymspec_status asymspec_family_eval(const asymspec_family* family, double h,
                                                  double* re, double* im);
ASYMSPEC_API asymspec_status asymspec_family_funcalc(const asymspec_family* family,
                                                     const asymspec_expr* f,
                                                     const asymspec_contour* contour,
                                                     asymspec_family** out);
ASYMSPEC_API void asymspec_family_free(asymspec_family* family);

/* expressions; error_offset (may be NULL) receives the byte offset of a
 * parse error. */
ASYMSPEC_API asymspec_status asymspec_expr_parse(const char* src, asymspec_expr** out,
                                                 size_t* error_offset);
ASYMSPEC_API asymspec_status asymspec_expr_eval(const asymspec_expr* f, double lambda_re,
                                                double lambda_im, double* out_re, double* out_im);
ASYMSPEC_API void asymspec_expr_free(asymspec_expr* f);

/* spectrum */
ASYMSPEC_API asymspec_status asymspec_quotient_bounds(const asymspec_family* family,
                                                      const asymspec_grid* grid, double* lower,
                                                      double* upper);
/* The region and epsilon used when none are given. */
ASYMSPEC_API asymspec_status asymspec_spectrum_defaults(const asymspec_family* family,
                                                        const asymspec_grid* grid,
                                                        asymspec_region* region, double* epsilon);
ASYMSPEC_API asymspec_status asymspec_field_compute(const asymspec_family* family,
                                                    const asymspec_region* region,
                                                    const asymspec_grid* grid,
                                                    asymspec_field** out);
/* Row-major over (imaginary, real) index; +inf marks a singular tail entry.
 * The pointer stays valid until the field is freed. */
ASYMSPEC_API asymspec_status asymspec_field_values(const asymspec_field* field,
                                                   const double** values, size_t* count);
ASYMSPEC_API asymspec_status asymspec_field_csv(const asymspec_field* field, char** out);
ASYMSPEC_API asymspec_status asymspec_field_spectrum_json(const asymspec_field* field,
                                                          double epsilon, char** out);
ASYMSPEC_API void asymspec_field_free(asymspec_field* field);

/* equivalence verdicts; tol <= 0 selects the default, n_max 0 selects 24 */
ASYMSPEC_API asymspec_status asymspec_equiv(const asymspec_family* s, const asymspec_family* t,
                                            const asymspec_grid* grid, double tol,
                                            asymspec_verdict* verdict, char** json);
ASYMSPEC_API asymspec_status asymspec_commuting(const asymspec_family* s, const asymspec_family* t,
                                                const asymspec_grid* grid, double tol,
                                                asymspec_verdict* verdict, char** json);
ASYMSPEC_API asymspec_status asymspec_qequiv(const asymspec_family* s, const asymspec_family* t,
                                             const asymspec_grid* grid, unsigned n_max, double tol,
                                             asymspec_verdict* verdict, char** json);
ASYMSPEC_API asymspec_status asymspec_qnil(const asymspec_family* u, const asymspec_grid* grid,
                                           unsigned n_max, double tol, asymspec_verdict* verdict,
                                           char** json);
/* CSV n,a_n,root of the (S-T)^[n] tail norms. */
ASYMSPEC_API asymspec_status asymspec_bracket_sequence_csv(const asymspec_family* s,
                                                           const asymspec_family* t,
                                                           const asymspec_grid* grid,
                                                           unsigned n_max, char** out);

/* Resolvent of s at lambda transported from t by the bracket series.
 * Report JSON: term norms, envelopes, left/right defects, truncation flag. */
ASYMSPEC_API asymspec_status asymspec_series(const asymspec_family* s, const asymspec_family* t,
                                             double lambda_re, double lambda_im,
                                             const asymspec_grid* grid, unsigned n_terms,
                                             double tol, char** json);

/* f(T_h) at each tail h plus a spectral-mapping comparison: the clusters of
 * {f(T_h)} against f applied to the cluster centroids of {T_h}. Either region
 * may be NULL for the family's default region. *matched is 1 when the two
 * sets pair off within one grid cell of the mapped region. */
ASYMSPEC_API asymspec_status asymspec_funcalc_report(const asymspec_family* t,
                                                     const asymspec_expr* f,
                                                     const asymspec_contour* contour,
                                                     const asymspec_grid* grid,
                                                     const asymspec_region* source_region,
                                                     const asymspec_region* mapped_region,
                                                     int* matched, char** json);

/* only may be NULL or "" for every suite. *passed is 1 when all checks pass. */
ASYMSPEC_API asymspec_status asymspec_verify(uint64_t seed, const char* only, int* passed,
                                             char** json);

#ifdef __cplusplus
}
#endif

#endif
