/* Copyright 2026 The vgfrft Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the vgfrft library: FFT/FRFT, Variance-Gamma densities by
 * characteristic-function inversion, maximum-likelihood fitting and the
 * exact Kolmogorov-Smirnov test.
 *
 * Conventions
 *   - Every fallible call returns a vgf_status. On failure a one-line message
 *     is available from vgf_last_error() on the calling thread until the next
 *     failing call on that thread.
 *   - Objects are opaque handles created by the create, load and fit calls and
 *     released with the matching *_destroy. Destroy functions accept NULL.
 *   - Complex arrays are interleaved (re0, im0, re1, im1, ...).
 *   - Caller-provided output arrays must hold the documented number of
 *     elements.
 */
#ifndef VGFRFT_VGFRFT_H
#define VGFRFT_VGFRFT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VGFRFT_BUILDING_LIBRARY)
#    define VGF_API __declspec(dllexport)
#  else
#    define VGF_API __declspec(dllimport)
#  endif
#else
#  define VGF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vgf_status {
  VGF_OK = 0,
  VGF_E_ARGUMENT = 1,      /* invalid argument or parameter */
  VGF_E_SIZE = 2,          /* length constraint (power of two, too few points) */
  VGF_E_CONTRACT = 3,      /* inconsistent grid */
  VGF_E_GRID_SUPPORT = 4,  /* CF not decayed at the grid edge / density invariants broken */
  VGF_E_SPAN = 5,          /* evaluation point outside the interpolation span */
  VGF_E_NUMERIC = 6,       /* non-finite arithmetic */
  VGF_E_PARSE = 7,         /* malformed input file */
  VGF_E_ORDERING = 8,      /* dates not strictly increasing */
  VGF_E_DOMAIN = 9,        /* KS distance outside (0, 1) */
  VGF_E_IO = 10,           /* file could not be read or written */
  VGF_E_MODEL_CDF = 11,    /* model CDF not monotone on the sample */
  VGF_E_DEGENERATE = 12,   /* degenerate data (ties, zero variance) */
  VGF_E_OUTLIER_LIMIT = 13,/* outlier rule would drop more than 5% */
  VGF_E_MOMENTS = 14,      /* method of moments has no solution */
  VGF_E_INTERNAL = 99
} vgf_status;

typedef struct vgf_params {
  double mu;
  double delta;
  double sigma; /* > 0 */
  double alpha; /* > 0, Gamma shape */
  double theta; /* > 0, Gamma scale */
} vgf_params;

/* Discretisation: input step beta = a/n; gamma <= 0 selects gamma = beta. */
typedef struct vgf_grid {
  double a;
  size_t n;
  double gamma;
} vgf_grid;

typedef struct vgf_moments {
  double mean;
  double variance;
  double skewness;
  double kurtosis; /* non-excess */
} vgf_moments;

typedef struct vgf_ks_result {
  double d_plus;
  double d_minus;
  double d_n;
  double p_value;
  size_t n;
} vgf_ks_result;

typedef enum vgf_model { VGF_MODEL_AVG = 0, VGF_MODEL_SVG = 1, VGF_MODEL_CLM = 2 } vgf_model;

typedef enum vgf_step { VGF_STEP_INITIAL = 0, VGF_STEP_NEWTON = 1, VGF_STEP_GRADIENT = 2 } vgf_step;

typedef struct vgf_iteration {
  int iteration; /* 1-based; row 1 is the starting point */
  vgf_params params;
  double loglik;
  double grad_norm;
  vgf_step step;
  int halvings;
} vgf_iteration;

typedef struct vgf_fit_options {
  int symmetric;    /* pin delta = 0 */
  int max_iters;    /* default 100 */
  double grad_tol;  /* default 1e-4 */
  int max_halvings; /* default 30 */
  double max_step;  /* default 1 (working coordinates) */
  vgf_grid grid;    /* default vgf_grid_fit_default() */
  double tail_error;/* default 1e-6 */
} vgf_fit_options;

typedef struct vgf_density vgf_density;
typedef struct vgf_sample vgf_sample;
typedef struct vgf_fit vgf_fit;

/* ------------------------------------------------------------ library */

VGF_API const char* vgf_version(void);
VGF_API const char* vgf_last_error(void);
VGF_API const char* vgf_status_name(vgf_status status);

/* ---------------------------------------------------------- transforms */

/* n must be a power of two; in/out hold 2n doubles and may alias. */
VGF_API vgf_status vgf_fft(const double* in, size_t n, double* out);
VGF_API vgf_status vgf_ifft(const double* in, size_t n, double* out);
/* G_k = sum_j x_j exp(-2 pi i j k delta), k < n. */
VGF_API vgf_status vgf_frft(const double* in, size_t n, double delta, double* out);

VGF_API vgf_grid vgf_grid_default(void);     /* a = 20, n = 2048 */
VGF_API vgf_grid vgf_grid_fit_default(void); /* wide grid used for fitting */
VGF_API vgf_status vgf_grid_validate(const vgf_grid* grid);

/* --------------------------------------------------------------- model */

VGF_API vgf_status vgf_params_validate(const vgf_params* p);
/* out[2] = (re, im) of the characteristic function at t. */
VGF_API vgf_status vgf_cf(const vgf_params* p, double t, double* out);
VGF_API vgf_status vgf_moments_of(const vgf_params* p, vgf_moments* out);
/* count draws of mu + delta V + sigma sqrt(V) Z, V ~ Gamma(alpha, theta). */
VGF_API vgf_status vgf_simulate(const vgf_params* p, size_t count, uint64_t seed, double* out);
VGF_API double vgf_clm_density(double mu, double sigma, double y);

/* order 0: density only; 1: plus first derivatives; 2: plus second. */
VGF_API vgf_status vgf_density_create(const vgf_params* p, const vgf_grid* grid, int order,
                                      vgf_density** out);
VGF_API void vgf_density_destroy(vgf_density* d);
VGF_API size_t vgf_density_size(const vgf_density* d);
VGF_API double vgf_density_tail(const vgf_density* d);
VGF_API int vgf_density_tail_warning(const vgf_density* d);
/* Each fills vgf_density_size() doubles. */
VGF_API vgf_status vgf_density_nodes(const vgf_density* d, double* x);
VGF_API vgf_status vgf_density_values(const vgf_density* d, double* f);
VGF_API vgf_status vgf_density_cdf(const vgf_density* d, double* cdf);
VGF_API vgf_status vgf_density_derivative(const vgf_density* d, int j, double* df);
VGF_API vgf_status vgf_density_second_derivative(const vgf_density* d, int j, int k, double* d2f);
/* Cubic interpolation inside the central 90% of the grid. */
VGF_API vgf_status vgf_density_eval(const vgf_density* d, double y, double* f);
VGF_API vgf_status vgf_density_eval_cdf(const vgf_density* d, double y, double* cdf);
VGF_API vgf_status vgf_density_moments(const vgf_density* d, vgf_moments* out);
VGF_API vgf_status vgf_density_write_csv(const vgf_density* d, const char* path, int with_cdf,
                                         int with_derivatives);

/* ---------------------------------------------------------- likelihood */

/* score: 5 doubles, hessian: 25 doubles row-major; either may be NULL.
 * order limits what is computed. grid NULL selects vgf_grid_fit_default(). */
VGF_API vgf_status vgf_loglik(const double* y, size_t n, const vgf_params* p, const vgf_grid* grid,
                              int order, double* value, double* score, double* hessian);

/* ------------------------------------------------------------- samples */

/* Price CSV (date,adjusted_close or Yahoo layout) -> scale * log returns.
 * format: "auto", "simple" or "yahoo". */
VGF_API vgf_status vgf_sample_from_prices(const char* path, const char* format, double scale,
                                          vgf_sample** out);
/* Sample CSV written by vgf_sample_save, or one value per line. */
VGF_API vgf_status vgf_sample_load(const char* path, vgf_sample** out);
/* Price file when the header names a price column, otherwise a sample file. */
VGF_API vgf_status vgf_sample_open(const char* path, double scale, vgf_sample** out);
VGF_API vgf_status vgf_sample_from_values(const double* y, size_t n, const char* description,
                                          vgf_sample** out);
VGF_API void vgf_sample_destroy(vgf_sample* s);
VGF_API vgf_status vgf_sample_save(const vgf_sample* s, const char* path);
VGF_API size_t vgf_sample_size(const vgf_sample* s);
/* Valid until the sample is filtered or destroyed. */
VGF_API const double* vgf_sample_values(const vgf_sample* s);
VGF_API size_t vgf_sample_rejected_rows(const vgf_sample* s);
/* rule: "none", "abs:T", "z:K" or "count:N". */
VGF_API vgf_status vgf_sample_filter(vgf_sample* s, const char* rule, int allow_excess);
VGF_API size_t vgf_sample_removed_count(const vgf_sample* s);
/* date may be "" when the sample carries no calendar; pointer valid while s lives. */
VGF_API vgf_status vgf_sample_removed(const vgf_sample* s, size_t i, size_t* index, double* value,
                                      const char** date);

/* ----------------------------------------------------------- estimation */

VGF_API void vgf_fit_options_default(vgf_fit_options* opts);
VGF_API vgf_status vgf_init_moments(const double* y, size_t n, int symmetric, vgf_params* out);
/* Returns VGF_OK with a fit handle even when the iteration did not converge. */
VGF_API vgf_status vgf_fit_mle(const double* y, size_t n, const vgf_params* init,
                               const vgf_fit_options* opts, vgf_fit** out);
VGF_API void vgf_fit_destroy(vgf_fit* f);
VGF_API vgf_status vgf_fit_result(const vgf_fit* f, vgf_params* params, double* loglik,
                                  int* converged);
VGF_API const char* vgf_fit_stop_reason(const vgf_fit* f);
VGF_API size_t vgf_fit_iteration_count(const vgf_fit* f);
VGF_API vgf_status vgf_fit_iteration(const vgf_fit* f, size_t i, vgf_iteration* row);
/* 25 doubles, row-major observed Hessian of the log-likelihood. */
VGF_API vgf_status vgf_fit_hessian(const vgf_fit* f, double* hessian);
VGF_API double vgf_fit_hessian_condition(const vgf_fit* f);
/* Inverse-Hessian standard errors; INFINITY where a parameter loads on an
 * unidentified direction, 0 for pinned parameters. */
VGF_API vgf_status vgf_fit_standard_errors(const vgf_fit* f, double* se);
VGF_API vgf_status vgf_fit_write_trace(const vgf_fit* f, const char* path);

VGF_API vgf_status vgf_fit_clm(const double* y, size_t n, double* mu, double* sigma,
                               int* degenerate, double* loglik);

/* ---------------------------------------------------------------- KS */

VGF_API vgf_status vgf_ks_null_cdf(size_t n, double d, double* out);
/* grid: m strictly increasing values in (0, 1); out: m doubles. */
VGF_API vgf_status vgf_ks_null_pdf(size_t n, const double* grid, size_t m, double* out);
VGF_API vgf_status vgf_ks_p_value(size_t n, double d_n, double* out);
VGF_API vgf_status vgf_ks_write_null_csv(size_t n, const double* grid, size_t m, const char* path);
/* Sample against a VG CDF built on grid (NULL selects the fit grid). */
VGF_API vgf_status vgf_ks_vg(const double* y, size_t n, const vgf_params* p, const vgf_grid* grid,
                             vgf_ks_result* out);
VGF_API vgf_status vgf_ks_clm(const double* y, size_t n, double mu, double sigma,
                              vgf_ks_result* out);

/* ------------------------------------------------------------ reports */

typedef struct vgf_summary {
  char tag[32];
  vgf_model model;
  char init[32];
  vgf_params params;
  double loglik;
  int converged;
  int iterations;
  double grad_norm;
  size_t sample_size;
  double hessian_condition;
  int has_ks;
  vgf_ks_result ks;
  char stop_reason[128];
} vgf_summary;

VGF_API vgf_status vgf_summary_save(const vgf_summary* s, const char* path);
VGF_API vgf_status vgf_summary_load(const char* path, vgf_summary* out);
/* Writes one comparison row per summary file, in the given order. */
VGF_API vgf_status vgf_report_merge(const char* const* paths, size_t count, const char* out_path);
/* Writes text verbatim; used for small CLI artifacts. */
VGF_API vgf_status vgf_write_text(const char* path, const char* text);
/* "# vgfrft <version> <kind>\n" */
VGF_API vgf_status vgf_artifact_header(const char* kind, char* buf, size_t size);

#ifdef __cplusplus
}
#endif

#endif /* VGFRFT_VGFRFT_H */
