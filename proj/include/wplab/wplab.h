/* C interface to the weak-product multiplier laboratory.
 *
 * Objects are opaque handles created by *_create / *_parse functions and
 * released with the matching *_free. Every fallible call returns a
 * wplab_status; on failure wplab_last_error() describes the problem for the
 * calling thread. Strings returned through char** are malloc()ed and must be
 * released with wplab_string_free().
 */
#ifndef WPLAB_WPLAB_H_
#define WPLAB_WPLAB_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wplab_status {
  WPLAB_OK = 0,
  WPLAB_ERR_INVALID_ARGUMENT = 1,
  WPLAB_ERR_CONFIG = 2,
  WPLAB_ERR_NUMERICAL = 3,
  WPLAB_ERR_INFEASIBLE = 4,
  WPLAB_ERR_BRACKET_INVERSION = 5,
  WPLAB_ERR_INTERNAL = 6
} wplab_status;

typedef struct wplab_space wplab_space;
typedef struct wplab_poly wplab_poly;

const char* wplab_version(void);
const char* wplab_last_error(void);
void wplab_string_free(char* s);

/* Spaces: "hardy", "dirichlet", "da<d>", or the JSON space format. */
wplab_status wplab_space_from_name(const char* name, wplab_space** out);
wplab_status wplab_space_from_json(const char* json, wplab_space** out);
wplab_status wplab_space_to_json(const wplab_space* space, char** out);
int wplab_space_dim(const wplab_space* space);
void wplab_space_free(wplab_space* space);

/* Polynomials in d variables. */
wplab_status wplab_poly_parse(const char* expr, int d, wplab_poly** out);
wplab_status wplab_poly_from_json(const char* json, int d, wplab_poly** out);
/* Random polynomial with small rational coefficients (k/4, |k| <= 8), seeded. */
wplab_status wplab_poly_random(int d, int max_degree, uint64_t seed, wplab_poly** out);
wplab_status wplab_poly_to_json(const wplab_poly* p, char** out);
int wplab_poly_degree(const wplab_poly* p);
void wplab_poly_free(wplab_poly* p);

typedef struct wplab_norm_result {
  double value;
  double residual;
  int iterations;
  int truncation;
  int exact; /* 1 when the truncation captures the whole operator */
} wplab_norm_result;

/* Largest singular value of T_phi on degree <= trunc. */
wplab_status wplab_mult_norm(const wplab_space* space, const wplab_poly* phi, int trunc, double tol, int max_iter,
                             wplab_norm_result* out);
/* OpMatrix JSON of T_phi (degree <= trunc) or H_b (degrees n_dom, n_cod). */
wplab_status wplab_mult_matrix_json(const wplab_space* space, const wplab_poly* phi, int trunc, char** out);
wplab_status wplab_hankel_matrix_json(const wplab_space* space, const wplab_poly* b, int n_dom, int n_cod,
                                      char** out);

typedef struct wplab_gap_result {
  int n;
  int trunc;
  double row_norm;
  double col_norm;
  double ratio;
  double expected_ratio;
  int certificate_ok;
} wplab_gap_result;

/* Transpose-gap construction for binomial_family(n) in Drury-Arveson space. */
wplab_status wplab_transpose_gap(const wplab_space* space, int n, int trunc, double tol, wplab_gap_result* out);
/* Row/column norms of an arbitrary multiplier tuple (certificate_ok is always 0). */
wplab_status wplab_column_row_gap(const wplab_space* space, const wplab_poly* const* phis, size_t count, int trunc,
                                  double tol, wplab_gap_result* out);

/* b_1..b_N of 1 - 1/k written to coeffs (may be NULL); *pass set to 0/1. */
wplab_status wplab_cnp_check(const wplab_space* space, int n_max, double* coeffs, int* pass);

wplab_status wplab_intertwining_residual(const wplab_space* space, const wplab_poly* b, const wplab_poly* psi,
                                         int trunc, double* out);
/* w given as d real and d imaginary parts. */
wplab_status wplab_kernel_hankel_rank_check(const wplab_space* space, const double* w_re, const double* w_im,
                                            int trunc, double* second_singular_value, double* factor_residual);
wplab_status wplab_kernel_dagger_residual(const wplab_space* space, const wplab_poly* theta, const double* w_re,
                                          const double* w_im, int trunc, double* out);

typedef struct wplab_wp_options {
  int restarts;
  int max_iter;
  double tol;
  uint64_t seed;
  int search_sweeps;
  int search_random_starts;
} wplab_wp_options;

void wplab_wp_options_default(wplab_wp_options* opts);

/* Weak-product bracket as JSON:
 * {"h":..., "lower":..., "lower_witness":..., "upper":..., "pairs":[{"f":...,"g":...}],
 *  "h1_oracle":float|null, "iters":int} */
wplab_status wplab_wp_bracket_json(const wplab_space* space, const wplab_poly* h, int rank, int degree,
                                   const wplab_wp_options* opts, char** out);

#ifdef __cplusplus
}
#endif

#endif /* WPLAB_WPLAB_H_ */
