/*
 * monodyn — dynamical invariants of monomial maps and correspondences on
 * the n-torus: exact degree sequences, dynamical degrees, degree-growth
 * asymptotics and orbit height growth, all driven by the reduction matrix
 * P = N * adj(M).
 *
 * C API of the shared library. All functions return MONODYN_OK on success
 * and an error code otherwise; monodyn_last_error() describes the most
 * recent failure on the calling thread. Output strings are allocated by
 * the library and must be released with monodyn_free_string(); matrices
 * are opaque handles released with monodyn_matrix_free().
 *
 * Matrix inputs accept rows separated by ';' with entries split on
 * whitespace or ',' ("2 1; 1 1"), or a JSON array of arrays. Points accept
 * whitespace/comma-separated rationals ("2, -2/3") or a JSON array of
 * rational strings. Big integers serialize as decimal strings in JSON.
 */
#ifndef MONODYN_H
#define MONODYN_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum monodyn_status {
  MONODYN_OK = 0,
  MONODYN_ERR_PARSE = 1,       /* malformed matrix/point input */
  MONODYN_ERR_SINGULAR = 2,    /* zero determinant where nonsingular required */
  MONODYN_ERR_DIMENSION = 3,   /* dimension mismatch or out of supported range */
  MONODYN_ERR_INTEGRALITY = 4, /* internal consistency: degree quotient not integral */
  MONODYN_ERR_PRECISION = 5,   /* root refinement failed; raise precision */
  MONODYN_ERR_LIMIT = 6,       /* factorization or cycle-size budget exceeded */
  MONODYN_ERR_INVALID = 7,     /* invalid argument */
  MONODYN_ERR_INTERNAL = 8
} monodyn_status;

typedef enum monodyn_format {
  MONODYN_FORMAT_JSON = 0,
  MONODYN_FORMAT_CSV = 1
} monodyn_format;

typedef enum monodyn_orbit_mode {
  MONODYN_ORBIT_FAST = 0,       /* heights through phi(P^p) */
  MONODYN_ORBIT_BRUTEFORCE = 1, /* p-fold cycle composition */
  MONODYN_ORBIT_CHECK = 2       /* both, with the identity diagnostic */
} monodyn_orbit_mode;

typedef struct monodyn_matrix monodyn_matrix;

const char* monodyn_version(void);

/* Description of the last failure on this thread; empty string if none. */
const char* monodyn_last_error(void);

void monodyn_free_string(char* s);

/* ----- matrices ----- */

monodyn_status monodyn_matrix_parse(const char* text, monodyn_matrix** out);
void monodyn_matrix_free(monodyn_matrix* m);
int monodyn_matrix_dim(const monodyn_matrix* m);
monodyn_status monodyn_matrix_to_json(const monodyn_matrix* m, char** out);

monodyn_status monodyn_matrix_det(const monodyn_matrix* m, char** decimal_out);
monodyn_status monodyn_matrix_adjugate(const monodyn_matrix* m, monodyn_matrix** out);
monodyn_status monodyn_matrix_pow(const monodyn_matrix* m, unsigned p, monodyn_matrix** out);
/* u*m*v == d, u and v unimodular, d diagonal with d1 | d2 | ... | dn. */
monodyn_status monodyn_matrix_smith(const monodyn_matrix* m, monodyn_matrix** u, monodyn_matrix** d,
                                    monodyn_matrix** v);
/* {"coefficients_ascending": ["...", ...]}, monic. */
monodyn_status monodyn_matrix_char_poly(const monodyn_matrix* m, char** json_out);

/* P = sign(det M) * N * adj(M), so that P*M = |det M|*N. Requires
 * det(M) != 0 and det(N) != 0. */
monodyn_status monodyn_reduction_matrix(const monodyn_matrix* m, const monodyn_matrix* n,
                                        monodyn_matrix** out);

/* ----- spectral data ----- */

monodyn_status monodyn_eigen_moduli(const monodyn_matrix* m, unsigned precision_bits,
                                    char** json_out);
monodyn_status monodyn_dynamical_degrees(const monodyn_matrix* m, const monodyn_matrix* n,
                                         unsigned precision_bits, char** json_out);
monodyn_status monodyn_degree_candidates(const monodyn_matrix* m, const monodyn_matrix* n,
                                         unsigned precision_bits, char** json_out);

/* ----- degrees ----- */

monodyn_status monodyn_map_degree(const monodyn_matrix* a, int k, char** decimal_out);
monodyn_status monodyn_corr_degree(const monodyn_matrix* m, const monodyn_matrix* n, int k,
                                   unsigned p, char** decimal_out);
/* k = -1 emits all rows. CSV columns: p,k,deg. */
monodyn_status monodyn_degree_table(const monodyn_matrix* m, const monodyn_matrix* n,
                                    unsigned p_max, int k, monodyn_format format, char** out);
monodyn_status monodyn_asymptotics(const monodyn_matrix* m, const monodyn_matrix* n, int l,
                                   unsigned p_max, unsigned precision_bits, char** json_out);

/* ----- orbit heights ----- */

/* CSV columns: p,height (fast/bruteforce modes; check mode is JSON only). */
monodyn_status monodyn_orbit_heights(const monodyn_matrix* m, const monodyn_matrix* n,
                                     const char* point, unsigned p_max, unsigned precision_bits,
                                     monodyn_orbit_mode mode, monodyn_format format, char** out);

/* ----- experiment drivers ----- */

/* Consistency battery on one correspondence; point may be NULL. */
monodyn_status monodyn_check(const monodyn_matrix* m, const monodyn_matrix* n, const char* point,
                             unsigned p_max, unsigned precision_bits, int* all_pass,
                             char** json_out);

/* Seeded random ensemble; equal seeds give byte-identical reports. */
monodyn_status monodyn_ensemble(unsigned dim, unsigned count, unsigned bound,
                                unsigned long long seed, unsigned p_max, unsigned orbit_p_max,
                                unsigned precision_bits, int* all_pass, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* MONODYN_H */
