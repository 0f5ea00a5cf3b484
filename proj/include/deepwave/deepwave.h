/* C interface to the deepwave toolkit.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every function returns a dw_status; on failure
 * dw_last_error() describes the problem for the calling thread. Output arrays
 * are caller-allocated with the length given by dw_grid_size / dw_profile_size.
 */
#ifndef DEEPWAVE_H
#define DEEPWAVE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DW_API __declspec(dllexport)
#else
#define DW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dw_status {
  DW_OK = 0,
  DW_ERR_DOMAIN = 1,
  DW_ERR_DECAY = 2,
  DW_ERR_SINGULAR = 3,
  DW_ERR_NON_FINITE = 4,
  DW_ERR_CONFIG = 5,
  DW_ERR_IO = 6,
  DW_ERR_INVALID_ARGUMENT = 7,
  DW_ERR_INSUFFICIENT_DATA = 8,
  DW_ERR_INTERNAL = 99
} dw_status;

typedef struct dw_grid dw_grid;
typedef struct dw_profile dw_profile;

typedef enum dw_hilbert_method { DW_HILBERT_PV_QUADRATURE = 0, DW_HILBERT_PERIODIZED = 1 } dw_hilbert_method;

typedef enum dw_residual_form { DW_FORM_DEEP = 0, DW_FORM_BERNOULLI = 1, DW_FORM_BVP = 2 } dw_residual_form;

typedef struct dw_identity_report {
  char name[64];
  double lhs;
  double rhs;
  double defect;
  double tolerance;
  int passed;
  int has_tail_estimate;
  double tail_estimate;
} dw_identity_report;

typedef struct dw_branch_info {
  int converged;
  double mu;
  double amplitude;
  double residual_norm;
  int newton_iters;
  int has_min_singular_value;
  double min_singular_value;
} dw_branch_info;

typedef enum dw_probe_outcome {
  DW_PROBE_COLLAPSED = 0,
  DW_PROBE_DIVERGED = 1,
  DW_PROBE_STAGNATED = 2,
  DW_PROBE_CONVERGED_NONTRIVIAL = 3
} dw_probe_outcome;

typedef struct dw_probe_summary {
  dw_probe_outcome outcome;
  double final_sup_norm;
  double final_residual;
  int has_decay;
  double rho;
  int superalgebraic;
  int certificate_verdict; /* see dw_certificate_verdict_name */
  int bound_holds;
  double w_l2_squared;
  double implied_bound;
  double budget;
} dw_probe_summary;

typedef struct dw_decay_fit {
  double rho;
  double x_lo;
  double x_hi;
  double fit_residual;
  int superalgebraic;
  int envelope;
} dw_decay_fit;

typedef struct dw_run_overrides {
  const char* output_dir; /* NULL keeps the config value */
  int has_seed;
  uint64_t seed;
  unsigned threads; /* 0 keeps the config value */
  double tolerance_scale; /* 1 leaves tolerances unchanged */
} dw_run_overrides;

DW_API const char* dw_version(void);
DW_API const char* dw_last_error(void);
DW_API const char* dw_certificate_verdict_name(int verdict);

/* grids */
DW_API dw_status dw_grid_periodic(size_t n, double period, dw_grid** out);
DW_API dw_status dw_grid_line(size_t n, double half_width, dw_grid** out);
DW_API void dw_grid_free(dw_grid* g);
DW_API size_t dw_grid_size(const dw_grid* g);
DW_API double dw_grid_spacing(const dw_grid* g);
DW_API dw_status dw_grid_nodes(const dw_grid* g, double* out);

/* profiles */
DW_API dw_status dw_profile_new(const dw_grid* g, const double* values, dw_profile** out);
DW_API void dw_profile_free(dw_profile* p);
DW_API size_t dw_profile_size(const dw_profile* p);
DW_API dw_status dw_profile_values(const dw_profile* p, double* out);

/* transforms; tail_threshold <= 0 disables the line decay check */
DW_API dw_status dw_hilbert(const dw_profile* v, dw_hilbert_method method, double tail_threshold, dw_profile** out);
DW_API dw_status dw_derivative(const dw_profile* v, dw_profile** out);
DW_API dw_status dw_conjugate_derivative(const dw_profile* v, dw_profile** out);

/* steady equation */
DW_API dw_status dw_residual(const dw_profile* w, double mu, dw_residual_form form, dw_profile** out,
                             double* l2_norm, double* sup_norm);
DW_API dw_status dw_injectivity_margin(const dw_profile* w, double* out);

/* identities */
DW_API dw_status dw_commutator_defect(const dw_profile* v, double tolerance, dw_identity_report* out);
DW_API dw_status dw_skew_pairing(const dw_profile* v, double tolerance, dw_identity_report* out);
DW_API dw_status dw_pohozaev_pairing(const dw_profile* w, double mu, dw_identity_report* out);

/* linearized operator */
DW_API dw_status dw_apply_L(const dw_profile* v, const dw_profile* w, double mu, dw_profile** out);
DW_API dw_status dw_plotnikov_forward(const dw_profile* v, const dw_profile* w, dw_profile** out);
DW_API dw_status dw_plotnikov_inverse(const dw_profile* u, const dw_profile* w, dw_profile** out);
DW_API dw_status dw_potential_G(const dw_profile* w, double mu, dw_profile** out);
/* eigenvalues (ascending, grid size entries) of Hd/dx + mu - G */
DW_API dw_status dw_schrodinger_spectrum(const dw_profile* G, double mu, double* eigenvalues);
DW_API dw_status dw_solve_linear_inhomogeneous(const dw_profile* g_rhs, double mu, dw_profile** out,
                                               double* dropped_tail);

/* half plane */
DW_API dw_status dw_dirichlet_to_neumann(const dw_profile* v, dw_profile** out);

/* periodic Newton solve; out may be NULL */
DW_API dw_status dw_newton_solve_periodic(const dw_profile* w0, double mu, int max_iterations, double tolerance,
                                          dw_profile** out, dw_branch_info* info);

/* solitary probe and decay fit (default window when lo >= hi) */
DW_API dw_status dw_probe_line(const dw_profile* w0, double mu, dw_probe_summary* out);
DW_API dw_status dw_decay_rate_fit(const dw_profile* v, double lo, double hi, dw_decay_fit* out);

/* batch runs: exit_code receives 0 (all tasks ok) or 1 (some task failed);
 * config errors return DW_ERR_CONFIG. manifest_path (may be NULL) receives
 * the path of manifest.json, up to path_capacity bytes including the NUL. */
DW_API dw_status dw_run_config_file(const char* path, const dw_run_overrides* overrides, int* exit_code,
                                    char* manifest_path, size_t path_capacity);

#ifdef __cplusplus
}
#endif

#endif
