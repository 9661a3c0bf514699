/* qdyn — exact arithmetic for degree-2 dynamics on P^1(Q): orbits, canonical
 * heights, preperiodic searches, and moduli verification suites.
 *
 * C interface of the shared library. All functions return qdyn_status;
 * results come back through out-parameters. Strings returned through
 * char** out-parameters are allocated by the library and must be released
 * with qdyn_string_free. Handles are opaque and freed with qdyn_map_free.
 *
 * Rational arguments are decimal strings "num/den" (or "num"); projective
 * points additionally accept "inf".
 */
#ifndef QDYN_H
#define QDYN_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qdyn_status {
  QDYN_OK = 0,
  QDYN_ERR_USAGE = 1,       /* bad arguments / parse failure */
  QDYN_ERR_DOMAIN = 2,      /* precondition or domain violation */
  QDYN_ERR_DEGENERATE = 3,  /* map degenerates to degree < 2 */
  QDYN_ERR_VERIFY = 4,      /* a verification suite reported failures */
  QDYN_ERR_IO = 5,          /* filesystem problem */
  QDYN_ERR_INTERNAL = 6
} qdyn_status;

typedef struct qdyn_map qdyn_map;

const char* qdyn_version(void);
const char* qdyn_status_name(qdyn_status s);
/* Message for the most recent failing call on this thread ("" if none). */
const char* qdyn_last_error(void);

void qdyn_string_free(char* s);
void qdyn_map_free(qdyn_map* m);

/* z^2 + c */
qdyn_status qdyn_map_poly(const char* c, qdyn_map** out);
/* f/g with integer coefficient strings ordered constant-first:
 * f = f0 + f1 z + f2 z^2, g likewise. */
qdyn_status qdyn_map_rational(const char* f0, const char* f1, const char* f2,
                              const char* g0, const char* g1, const char* g2,
                              qdyn_map** out);
/* the map whose orbit of infinity starts inf -> 1 -> 0 -> x3 -> x4 -> x5 */
qdyn_status qdyn_map_from_triple(const char* x3, const char* x4, const char* x5,
                                 qdyn_map** out);

qdyn_status qdyn_map_format(const qdyn_map* m, char** out);
qdyn_status qdyn_map_apply(const qdyn_map* m, const char* point, char** out);
qdyn_status qdyn_map_resultant(const qdyn_map* m, char** out);
/* comma-separated ascending primes of bad reduction ("" for none) */
qdyn_status qdyn_map_bad_primes(const qdyn_map* m, char** out);

typedef struct qdyn_orbit_info {
  int resolved;   /* 1 when an exact repeat was found */
  long tail;      /* valid when resolved */
  long period;    /* valid when resolved */
  long iterates;  /* how many iterates were computed */
} qdyn_orbit_info;

qdyn_status qdyn_map_orbit(const qdyn_map* m, const char* point, long max_iter,
                           qdyn_orbit_info* out);

/* estimate = 2^{-iters} h(phi^iters x) with iters chosen so the certified
 * error is below abs_err; floor is the resultant-bound lower estimate;
 * preperiodic becomes 1 (and estimate exactly 0) once the orbit resolves. */
qdyn_status qdyn_map_canonical_height(const qdyn_map* m, const char* point, double abs_err,
                                      double* estimate, double* floor, int* preperiodic);

/* R, certified positive lower bound D for min max(|f|,|g|)/max(t^2,1),
 * and C = log(|R|/D). */
qdyn_status qdyn_map_height_bound(const qdyn_map* m, char** resultant, double* d_lower,
                                  double* c_const);

/* sigma1 = a/c, sigma2 = b/c as strings plus log max(|a|,|b|,|c|). */
qdyn_status qdyn_map_sigma(const qdyn_map* m, char** sigma1, char** sigma2,
                           double* map_height);

/* every rational preperiodic point of height <= bound, newline-separated */
qdyn_status qdyn_map_preperiodic_points(const qdyn_map* m, double height_bound, int workers,
                                        char** out);

typedef struct qdyn_poly_search_opts {
  long n_max;
  long N_max;
  double ratio;      /* small-height threshold, default 0.02 */
  double ratio_odd;  /* optional threshold when 4 does not divide n; 0 = off */
  int workers;
  int resume;
  const char* out_path;  /* NULL = stdout */
  const char* csv_path;  /* NULL = no csv */
} qdyn_poly_search_opts;

qdyn_status qdyn_poly_search(const qdyn_poly_search_opts* opts, long* n_records);

typedef struct qdyn_rat_search_opts {
  double height_bound;  /* natural log of the coordinate cap */
  double ratio;         /* default 0.002 */
  int workers;
  int resume;
  const char* out_path;
  const char* csv_path;
} qdyn_rat_search_opts;

qdyn_status qdyn_rat_search(const qdyn_rat_search_opts* opts, long* n_records);

/* target: eq11 | tables | x42 | x52 | sigma. Renders a pass/fail report into
 * *report. Returns QDYN_ERR_VERIFY when any check fails. */
qdyn_status qdyn_verify(const char* target, int workers, char** report);

#ifdef __cplusplus
}
#endif

#endif /* QDYN_H */
