#ifndef HOROLAB_H_
#define HOROLAB_H_

#include <stddef.h>

#if defined(_WIN32)
#define HOROLAB_API __declspec(dllexport)
#else
#define HOROLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every function returns HORO_OK or a negative code. */
#define HORO_OK 0
#define HORO_ERR_DOMAIN -1
#define HORO_ERR_DEGENERATE_NODE -2
#define HORO_ERR_CONVERGENCE -3
#define HORO_ERR_CAPACITY -4
#define HORO_ERR_NUMERIC -5
#define HORO_ERR_INCOMPLETE_ORBIT -6
#define HORO_ERR_NODE_CHOICE -7
#define HORO_ERR_CONFIG -8
#define HORO_ERR_IO -9
#define HORO_ERR_NULL_POINTER -10
#define HORO_ERR_BUFFER_TOO_SMALL -11
#define HORO_ERR_INVALID_HANDLE -12
#define HORO_ERR_UNKNOWN -100

HOROLAB_API const char* horo_status_string(int status);

/* Message of the last failure on the calling thread; empty if none. */
HOROLAB_API const char* horo_last_error(void);

/* ---- exponent budgets and rank-one kernels ---- */

typedef struct {
  long long num;
  long long den;
} horo_rational_t;

typedef struct {
  int n;
  horo_rational_t delta;
  horo_rational_t s1;
  horo_rational_t P;
  horo_rational_t eta_cont;
  horo_rational_t eta_s1;
  horo_rational_t kernel_norm_exp;
  horo_rational_t eps_exponent;
  horo_rational_t total_error_exp;
  horo_rational_t log_power;
  horo_rational_t kinv_total_error_exp;
  horo_rational_t kinv_log_power;
} horo_budget_t;

/* delta and s1 are decimal or a/b strings parsed exactly; s1 may be NULL (s1 = n/2). */
HOROLAB_API int horo_exponent_budget(int n, const char* delta, const char* s1, horo_budget_t* out);

#define HORO_ROUTE_AUTO 0
#define HORO_ROUTE_SMOOTHED 1
#define HORO_ROUTE_K_INVARIANT 2

typedef struct {
  double eps;
  double error_exponent;
  double log_power;
  double smoothing_term;
  double spectral_term;
  int regime_ok;
} horo_eps_t;

HOROLAB_API int horo_epsilon_rank1(int n, double delta, double T, double norm_gamma,
                                   double norm_1inf, int route, horo_eps_t* out);

typedef struct horo_kernel_s* horo_kernel_t;

HOROLAB_API int horo_kernel_create(horo_kernel_t* out, int n, double T, double eps);
HOROLAB_API int horo_kernel_destroy(horo_kernel_t k);
HOROLAB_API int horo_kernel_value(horo_kernel_t k, double y, double* out);
HOROLAB_API int horo_kernel_support(horo_kernel_t k, double* y_min, double* y_max);

/* out = {Re alpha, Im alpha, Re beta, Im beta} */
HOROLAB_API int horo_alpha_beta(horo_kernel_t k, double s_re, double s_im, double out[4]);

/* out = {Re K, Im K, Re L, Im L} */
HOROLAB_API int horo_interpolation_weights(int n, double s_re, double s_im, double T, double b,
                                           double eps, double out[4]);

HOROLAB_API int horo_interpolation_residual(int n, double s_re, double s_im, const double A[2],
                                            const double B[2], double T, double b, double eps,
                                            double* out);

/* ---- modular surface ---- */

typedef struct horo_bump_s* horo_bump_t;

typedef struct {
  int panels_x;
  int panels_y;
  int nodes_per_panel;
  double tol;
} horo_quad_t;

HOROLAB_API void horo_quad_default(horo_quad_t* q);

HOROLAB_API int horo_bump_create(horo_bump_t* out, double center_x, double center_y, double wx,
                                 double wy, double amplitude);
HOROLAB_API int horo_bump_create_default(horo_bump_t* out);
HOROLAB_API int horo_bump_destroy(horo_bump_t f);

HOROLAB_API int horo_reduce(double x, double y, double* rx, double* ry, long long g[4]);
HOROLAB_API int horo_horocycle_average(horo_bump_t f, double T, const horo_quad_t* q, double* out);
HOROLAB_API int horo_hyperbolic_average(horo_bump_t f, double* out);
HOROLAB_API int horo_norms(horo_bump_t f, const horo_quad_t* q, double* l2_gamma,
                           double* sobolev_1_inf);
/* folded != 0 integrates against the automorphized kernel; otherwise unfolds. */
HOROLAB_API int horo_thickened_average(horo_bump_t f, double T, double eps, const horo_quad_t* q,
                                       int folded, double* out);
HOROLAB_API int horo_automorphized_kernel(double T, double eps, double x, double y, double* out);

/* ---- SL3 ---- */

/* Complex pairs are passed as {Re a, Im a, Re b, Im b}. */
HOROLAB_API int horo_sl3_lambda_from_nu(const double nu[4], double out[4]);
HOROLAB_API int horo_sl3_lambda_from_sr(const double sr[4], double out[4]);
HOROLAB_API int horo_sl3_sr_from_nu(const double nu[4], double out[4]);

/* roots: six (nu1, nu2) complex pairs, 24 doubles. */
HOROLAB_API int horo_sl3_nu_orbit(const double lambda[4], double roots[24], int multiplicity[6],
                                  double* max_residual);

typedef struct horo_sl3_scheme_s* horo_sl3_scheme_t;

/* nodes: six (b1, b2) pairs, or NULL for the default grid. */
HOROLAB_API int horo_sl3_scheme_create(horo_sl3_scheme_t* out, const double lambda[4],
                                       const double* nodes, double eps);
HOROLAB_API int horo_sl3_scheme_destroy(horo_sl3_scheme_t s);
HOROLAB_API int horo_sl3_scheme_condition(horo_sl3_scheme_t s, double* out);
/* weights: six complex values, 12 doubles. */
HOROLAB_API int horo_sl3_scheme_weights(horo_sl3_scheme_t s, double T1, double T2,
                                        double weights[12]);
/* exponents: six (s, r) complex pairs, 24 doubles. */
HOROLAB_API int horo_sl3_scheme_exponents(horo_sl3_scheme_t s, double exponents[24]);

HOROLAB_API int horo_sl3_epsilon(double T1, double T2, double norm_gamma, double norm_1inf,
                                 double* eps, int* regime_ok);
HOROLAB_API int horo_sl3_green_kernel(double lambda1, const double y[2], const double xi[2],
                                      double* kappa, double* value);

/* ---- SLn ---- */

/* Writes the (n-1)^2 table row-major; *needed receives the element count. */
HOROLAB_API int horo_sln_b_table(int n, long long* out, size_t capacity, size_t* needed);
HOROLAB_API int horo_sln_icont_exponents(int n, horo_rational_t* out, size_t capacity,
                                         size_t* needed);
HOROLAB_API int horo_sln_icont(int n, const double* T, size_t len, double* out);
HOROLAB_API int horo_sln_weyl_orbit_size(int n, unsigned long long* out);
HOROLAB_API int horo_sln_kernel_widths(int n, int* y_exponents, int* width_exponents,
                                       size_t capacity, size_t* needed);
HOROLAB_API int horo_sln_laplace_beltrami(int n, const double* s, size_t len, double* out);
HOROLAB_API int horo_sln_casimir_n4(int op_index, const double s[3], double* out);

typedef struct {
  double eps;
  double error_exponent;
  double smoothing_term;
  double spectral_term;
  int regime_ok;
} horo_sln_eps_t;

HOROLAB_API int horo_sln_epsilon(int n, const double* T, size_t len, double norm_gamma,
                                 double norm_1inf, horo_sln_eps_t* out);

/* ---- experiments ---- */

typedef struct horo_experiment_s* horo_experiment_t;

HOROLAB_API int horo_experiment_load(horo_experiment_t* out, const char* path);
HOROLAB_API int horo_experiment_parse(horo_experiment_t* out, const char* text);
HOROLAB_API int horo_experiment_destroy(horo_experiment_t e);
HOROLAB_API int horo_experiment_set_workers(horo_experiment_t e, int workers);
HOROLAB_API int horo_experiment_set_output(horo_experiment_t e, const char* path);
HOROLAB_API int horo_experiment_run(horo_experiment_t e, int record_timing);
HOROLAB_API int horo_experiment_passed(horo_experiment_t e, int* passed);
HOROLAB_API int horo_experiment_row_count(horo_experiment_t e, size_t* out);
HOROLAB_API int horo_experiment_fit(horo_experiment_t e, int* has_fit, double* slope,
                                    double* intercept, double* r2);
/* Writes the CSV and summary to path, or to the configured output when path is NULL. */
HOROLAB_API int horo_experiment_write_report(horo_experiment_t e, const char* path);
/* Copies text including the terminator; *needed receives the required size. */
HOROLAB_API int horo_experiment_csv(horo_experiment_t e, char* buf, size_t capacity,
                                    size_t* needed);
HOROLAB_API int horo_experiment_summary(horo_experiment_t e, char* buf, size_t capacity,
                                        size_t* needed);

/* ---- self-checks ---- */

typedef void (*horo_check_cb)(const char* name, int passed, const char* detail, void* user);

HOROLAB_API int horo_verify(const char* suite, horo_check_cb cb, void* user, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif
