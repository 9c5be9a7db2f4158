/* uspring: asymptotic expansions and numerically continued nonlinear normal
 * modes for spring-mass systems with a weak unilateral spring.
 *
 * C API of the shared library.  Handles are opaque; every function that can
 * fail returns usp_status and leaves a message in usp_last_error() (thread
 * local).  Array arguments are caller-allocated.
 */
#ifndef USPRING_H
#define USPRING_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum usp_status {
  USP_OK = 0,
  USP_ERR_INVALID = 1,          /* bad arguments / validation failure */
  USP_ERR_DOMAIN = 2,           /* outside a formula's domain */
  USP_ERR_RESONANCE = 3,        /* Z-independence / near-resonance screen */
  USP_ERR_INTEGRATION = 4,      /* integrator failure */
  USP_ERR_CONTINUATION = 5,     /* continuation could not start or finish */
  USP_ERR_NO_CONVERGENCE = 6,   /* nonlinear solve or averaging failed */
  USP_ERR_UNSUPPORTED_CASE = 7, /* parameter combination not covered */
  USP_ERR_INSUFFICIENT_DATA = 8,
  USP_ERR_IO = 9
} usp_status;

const char* usp_last_error(void);

/* ---- Fourier kernels ---------------------------------------------------- */

/* coeffs has n_max+1 entries. */
usp_status usp_abs_cos_coeffs(int n_max, double* coeffs);
usp_status usp_rectified_cos_coeffs(double c, int n_max, double* beta,
                                    double* coeffs);
usp_status usp_rectified_neg_cos_coeffs(double c, int n_max, double* beta,
                                        double* coeffs);
double usp_eval_cosine_series(const double* coeffs, int n_coeffs, double s);

/* ---- one degree of freedom ---------------------------------------------- */

usp_status usp_exact_frequency(double omega0, double eps, double* omega);

typedef struct usp_expansion1 usp_expansion1;

typedef struct usp_expansion1_info {
  double omega0, omega1, omega2;
  double alpha1, alpha2;
  double a, b, a0, a1;
  int case_tag; /* 0 homogeneous, 1 offset, 2 critical, 3 no_contact */
  int n_coeffs;
  double truncation_tail;
  double horizon_exponent; /* validity ~ eps^-exponent; 0 with infinite flag */
  int horizon_infinite;
} usp_expansion1_info;

usp_status usp_expand1_homogeneous(double omega0, double a0, double a1, int n_max,
                                   usp_expansion1** out);
usp_status usp_expand1_offset(double omega0, double a, double b, double a0,
                              double a1, int n_max, usp_expansion1** out);
usp_status usp_expand1_critical(double omega0, double a, double b, double a0,
                                double a1, usp_expansion1** out);
usp_status usp_expansion1_get(const usp_expansion1* e, usp_expansion1_info* info);
usp_status usp_expansion1_coeffs(const usp_expansion1* e, double* coeffs, int cap);
usp_status usp_alpha2_quadrature(const usp_expansion1* e, int n_quad,
                                 double* alpha2, int* underresolved);
usp_status usp_expansion1_write_json(const usp_expansion1* e, const char* path);
usp_status usp_expansion1_write_reconstruction_csv(const usp_expansion1* e,
                                                   double eps, int n_samples,
                                                   const char* path);
void usp_expansion1_free(usp_expansion1* e);

/* ---- systems ------------------------------------------------------------ */

typedef struct usp_system usp_system;

usp_status usp_system_create(int n, const double* lambdas, const double* A,
                             const double* B, double eps, usp_system** out);
usp_status usp_system_from_physical(int n, const double* mass_diag,
                                    const double* stiffness, int defect_mode,
                                    double gap, double eps, usp_system** out);
usp_status usp_system_preset(const char* name, double eps, double gap,
                             usp_system** out);
usp_status usp_system_size(const usp_system* s, int* n);
/* any output pointer may be NULL */
usp_status usp_system_get(const usp_system* s, double* lambdas, double* A,
                          double* B, double* eps);
usp_status usp_system_set_eps(usp_system* s, double eps);
void usp_system_free(usp_system* s);

/* ---- time integration ---------------------------------------------------- */

typedef struct usp_series usp_series;

usp_status usp_simulate(const usp_system* s, const double* u0, const double* v0,
                        double t_end, double tol, usp_series** out);
usp_status usp_series_size(const usp_series* ts, int* n_samples, int* n_dof,
                           int* n_events);
/* t: n_samples, u/v: n_samples * n_dof row-major */
usp_status usp_series_data(const usp_series* ts, double* t, double* u, double* v);
usp_status usp_series_events(const usp_series* ts, double* t, int* index);
usp_status usp_series_sample(const usp_series* ts, double t, double* u, double* v);
usp_status usp_series_write_csv(const usp_series* ts, const char* path);
usp_status usp_series_write_sidecar_json(const usp_series* ts, const char* path);
void usp_series_free(usp_series* ts);

/* functional: 0 linear, 1 with contact potential */
usp_status usp_energy(const usp_system* s, const double* u, const double* v,
                      int functional, double* e);

/* ---- n-dof expansions ----------------------------------------------------- */

typedef struct usp_expansion_n usp_expansion_n;

typedef struct usp_expansion_n_info {
  double omega0, omega1, omega2;
  double alpha1, alpha2;
  double a0, a1;
  int mode, n_dof, n_coeffs;
} usp_expansion_n_info;

usp_status usp_expand_mode(const usp_system* s, int mode, double a0, double a1,
                           int n_max, usp_expansion_n** out);
usp_status usp_expansion_n_get(const usp_expansion_n* e, usp_expansion_n_info* info);
usp_status usp_expansion_n_amplitudes(const usp_expansion_n* e, double* a_k);
usp_status usp_expansion_n_coeffs(const usp_expansion_n* e, int mode_k,
                                  double* coeffs, int cap);
usp_status usp_expansion_n_write_json(const usp_expansion_n* e, const char* path);
void usp_expansion_n_free(usp_expansion_n* e);

usp_status usp_periodic_initial_amplitudes(const usp_system* s, int mode, double a0,
                                           int n_max, double* a_k);
/* t_window <= 0 picks the default averaging window; converged may be NULL */
usp_status usp_first_order_all_modes(const usp_system* s, const double* amplitudes,
                                     double t_window, double* lambda1,
                                     double* lambda_eps, int* converged);
usp_status usp_first_order_write_csv(const usp_system* s, const double* amplitudes,
                                     double t_window, const char* path);

/* ---- nonlinear normal modes ----------------------------------------------- */

typedef struct usp_nnm_point {
  double T, energy, eps, residual_norm, velocity_return;
  int iterations, branch_id;
} usp_nnm_point;

usp_status usp_shoot_residual(const usp_system* s, const double* x0, double T,
                              double c, double tol, double* F /* n+1 */);
usp_status usp_solve_nnm(const usp_system* s, const double* x0_guess, double T_guess,
                         double c, double tol, int max_iter, double* x0,
                         usp_nnm_point* info);

typedef struct usp_branch usp_branch;

/* A partial branch returns USP_ERR_CONTINUATION but still sets *out. */
usp_status usp_continue_nnm(const usp_system* s, int mode, double c,
                            double eps_start, double eps_end, double delta0,
                            double tol, usp_branch** out);
usp_status usp_branch_size(const usp_branch* b, int* n_points, int* n_dof,
                           int* completed);
usp_status usp_branch_point(const usp_branch* b, int i, double* x0,
                            usp_nnm_point* info);
usp_status usp_branch_write_csv(const usp_branch* b, const char* path);
usp_status usp_branch_write_json(const usp_branch* b, const char* path);
void usp_branch_free(usp_branch* b);

/* ---- analysis -------------------------------------------------------------- */

usp_status usp_measure_period(const usp_system* s, const usp_series* ts,
                              int component, double* period, double* std_error);
/* hann: 0 rectangular, 1 Hann.  freq/amp: n_fft/2 + 1 entries. */
usp_status usp_spectrum(const usp_system* s, const usp_series* ts, int component,
                        int hann, int n_fft, double* freq, double* amp);
usp_status usp_spectrum_write_csv(const usp_system* s, const usp_series* ts,
                                  int component, int hann, int n_fft,
                                  const char* path);
/* n uniformly spaced samples with step dt; n must be a power of two;
 * freq/amp: n/2 + 1 entries */
usp_status usp_spectrum_of_samples(const double* samples, int n, double dt,
                                   int hann, double* freq, double* amp);
usp_status usp_chi_remainder(const double* u, const double* v, int n, double eps,
                             double* chi);
/* sampled signal (t, u), linear interpolation between samples */
usp_status usp_small_set_measure(const double* t, const double* u, int n,
                                 double threshold, double* measure);
usp_status usp_abs_spectrum_gap(const double* lambdas, const double* amplitudes,
                                int n, double t_avg, double* c_abs_T,
                                double* c_abs_2T, double* c0);

/* ---- acceptance suite ------------------------------------------------------ */

typedef struct usp_report usp_report;

typedef struct usp_criterion {
  int index;
  int passed;
  int skipped;
  char name[96];
  char measured[256];
  char expected[128];
  double seconds;
} usp_criterion;

/* Returns USP_OK even when criteria fail; inspect the entries. */
usp_status usp_validate_run(int quick, usp_report** out);
usp_status usp_report_size(const usp_report* r, int* n);
usp_status usp_report_entry(const usp_report* r, int i, usp_criterion* out);
usp_status usp_report_write_json(const usp_report* r, const char* path);
void usp_report_free(usp_report* r);

#ifdef __cplusplus
}
#endif

#endif /* USPRING_H */
