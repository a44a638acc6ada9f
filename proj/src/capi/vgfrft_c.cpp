// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#include "vgfrft/vgfrft.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include "vgfrft/data_io.hpp"
#include "vgfrft/errors.hpp"
#include "vgfrft/frft.hpp"
#include "vgfrft/gof_ks.hpp"
#include "vgfrft/likelihood.hpp"
#include "vgfrft/optimizer.hpp"
#include "vgfrft/vg_model.hpp"

struct vgf_density {
  vgfrft::DensityGrid grid;
  std::vector<double> cdf;  // cumulative trapezoid of grid.f
};

struct vgf_sample {
  vgfrft::ReturnSample sample;
  std::size_t rejected_rows = 0;
};

struct vgf_fit {
  vgfrft::FitReport report;
};

namespace {

using vgfrft::ErrorCode;

thread_local std::string g_last_error;

template <class F>
vgf_status guarded(F&& body) noexcept {
  try {
    body();
    return VGF_OK;
  } catch (const vgfrft::Error& e) {
    g_last_error = e.what();
    return static_cast<vgf_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return VGF_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return VGF_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return VGF_E_INTERNAL;
  }
}

void need(const void* ptr, const char* name) {
  vgfrft::require(ptr != nullptr, ErrorCode::argument, std::string(name) + " must not be NULL");
}

vgfrft::VgParams to_cpp(const vgf_params& p) { return {p.mu, p.delta, p.sigma, p.alpha, p.theta}; }

vgf_params to_c(const vgfrft::VgParams& p) { return {p.mu, p.delta, p.sigma, p.alpha, p.theta}; }

vgfrft::FrftGrid to_cpp(const vgf_grid& g) {
  vgfrft::require(std::isfinite(g.a) && g.a > 0.0, ErrorCode::argument, "grid width a must be positive");
  const auto grid = vgfrft::FrftGrid::make(g.a, g.n, g.gamma);
  grid.validate();
  return grid;
}

vgf_grid to_c(const vgfrft::FrftGrid& g) { return {g.a, g.n, g.gamma}; }

vgfrft::FrftGrid grid_or_fit_default(const vgf_grid* g) {
  return g ? to_cpp(*g) : vgfrft::FrftGrid::fit_default();
}

std::span<const double> observations(const double* y, std::size_t n) {
  need(y, "observations");
  vgfrft::require(n > 0, ErrorCode::size, "sample must not be empty");
  return {y, n};
}

vgfrft::ComplexVec unpack(const double* in, std::size_t n) {
  need(in, "input");
  vgfrft::ComplexVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = {in[2 * i], in[2 * i + 1]};
  return x;
}

void pack(const vgfrft::ComplexVec& x, double* out) {
  need(out, "output");
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[2 * i] = x[i].real();
    out[2 * i + 1] = x[i].imag();
  }
}

vgf_moments to_c(const vgfrft::Moments& m) { return {m.mean, m.variance, m.skewness, m.kurtosis}; }

vgf_ks_result to_c(const vgfrft::KsResult& r) { return {r.d_plus, r.d_minus, r.d_n, r.p_value, r.n}; }

vgfrft::KsResult to_cpp(const vgf_ks_result& r) {
  vgfrft::KsResult k;
  k.d_plus = r.d_plus;
  k.d_minus = r.d_minus;
  k.d_n = r.d_n;
  k.p_value = r.p_value;
  k.n = r.n;
  return k;
}

void copy_string(char* dst, std::size_t size, const std::string& src) {
  const std::size_t len = std::min(size - 1, src.size());
  std::memcpy(dst, src.data(), len);
  dst[len] = '\0';
}

std::string bounded(const char* s, std::size_t size) { return std::string(s, strnlen(s, size)); }

vgfrft::ModelTag to_cpp(vgf_model m) {
  switch (m) {
    case VGF_MODEL_AVG:
      return vgfrft::ModelTag::avg;
    case VGF_MODEL_SVG:
      return vgfrft::ModelTag::svg;
    case VGF_MODEL_CLM:
      return vgfrft::ModelTag::clm;
  }
  vgfrft::raise(ErrorCode::argument, "unknown model");
}

vgf_model to_c(vgfrft::ModelTag m) {
  switch (m) {
    case vgfrft::ModelTag::avg:
      return VGF_MODEL_AVG;
    case vgfrft::ModelTag::svg:
      return VGF_MODEL_SVG;
    case vgfrft::ModelTag::clm:
      return VGF_MODEL_CLM;
  }
  return VGF_MODEL_AVG;
}

vgf_step to_c(vgfrft::StepKind k) {
  switch (k) {
    case vgfrft::StepKind::initial:
      return VGF_STEP_INITIAL;
    case vgfrft::StepKind::newton:
      return VGF_STEP_NEWTON;
    case vgfrft::StepKind::gradient:
      return VGF_STEP_GRADIENT;
  }
  return VGF_STEP_INITIAL;
}

}  // namespace

extern "C" {

// ------------------------------------------------------------ library

const char* vgf_version(void) { return VGFRFT_VERSION_STRING; }

const char* vgf_last_error(void) { return g_last_error.c_str(); }

const char* vgf_status_name(vgf_status status) {
  if (status == VGF_OK) return "ok";
  return vgfrft::error_code_name(static_cast<ErrorCode>(status)).data();
}

// ---------------------------------------------------------- transforms

vgf_status vgf_fft(const double* in, size_t n, double* out) {
  return guarded([&] { pack(vgfrft::fft(unpack(in, n)), out); });
}

vgf_status vgf_ifft(const double* in, size_t n, double* out) {
  return guarded([&] { pack(vgfrft::ifft(unpack(in, n)), out); });
}

vgf_status vgf_frft(const double* in, size_t n, double delta, double* out) {
  return guarded([&] { pack(vgfrft::frft(unpack(in, n), delta), out); });
}

vgf_grid vgf_grid_default(void) { return to_c(vgfrft::FrftGrid::compact_default()); }

vgf_grid vgf_grid_fit_default(void) { return to_c(vgfrft::FrftGrid::fit_default()); }

vgf_status vgf_grid_validate(const vgf_grid* grid) {
  return guarded([&] {
    need(grid, "grid");
    (void)to_cpp(*grid);
  });
}

// --------------------------------------------------------------- model

vgf_status vgf_params_validate(const vgf_params* p) {
  return guarded([&] {
    need(p, "params");
    to_cpp(*p).validate();
  });
}

vgf_status vgf_cf(const vgf_params* p, double t, double* out) {
  return guarded([&] {
    need(p, "params");
    need(out, "output");
    const auto params = to_cpp(*p);
    params.validate();
    const auto v = vgfrft::cf(params, t);
    out[0] = v.real();
    out[1] = v.imag();
  });
}

vgf_status vgf_moments_of(const vgf_params* p, vgf_moments* out) {
  return guarded([&] {
    need(p, "params");
    need(out, "output");
    *out = to_c(vgfrft::moments(to_cpp(*p)));
  });
}

vgf_status vgf_simulate(const vgf_params* p, size_t count, uint64_t seed, double* out) {
  return guarded([&] {
    need(p, "params");
    need(out, "output");
    const auto draws = vgfrft::sample(to_cpp(*p), count, seed);
    std::copy(draws.begin(), draws.end(), out);
  });
}

double vgf_clm_density(double mu, double sigma, double y) { return vgfrft::clm_density(mu, sigma, y); }

vgf_status vgf_density_create(const vgf_params* p, const vgf_grid* grid, int order, vgf_density** out) {
  return guarded([&] {
    need(p, "params");
    need(grid, "grid");
    need(out, "output handle");
    *out = nullptr;
    auto d = std::make_unique<vgf_density>();
    d->grid = vgfrft::density_grid(to_cpp(*p), to_cpp(*grid), order);
    d->cdf = vgfrft::cdf_grid(d->grid);
    *out = d.release();
  });
}

void vgf_density_destroy(vgf_density* d) { delete d; }

size_t vgf_density_size(const vgf_density* d) { return d ? d->grid.size() : 0; }

double vgf_density_tail(const vgf_density* d) {
  return d ? d->grid.tail_magnitude : std::numeric_limits<double>::quiet_NaN();
}

int vgf_density_tail_warning(const vgf_density* d) { return d && d->grid.tail_warning ? 1 : 0; }

vgf_status vgf_density_nodes(const vgf_density* d, double* x) {
  return guarded([&] {
    need(d, "density");
    need(x, "output");
    for (std::size_t k = 0; k < d->grid.size(); ++k) x[k] = d->grid.node(k);
  });
}

vgf_status vgf_density_values(const vgf_density* d, double* f) {
  return guarded([&] {
    need(d, "density");
    need(f, "output");
    std::copy(d->grid.f.begin(), d->grid.f.end(), f);
  });
}

vgf_status vgf_density_cdf(const vgf_density* d, double* cdf) {
  return guarded([&] {
    need(d, "density");
    need(cdf, "output");
    const auto& c = d->cdf;
    std::copy(c.begin(), c.end(), cdf);
  });
}

vgf_status vgf_density_derivative(const vgf_density* d, int j, double* df) {
  return guarded([&] {
    need(d, "density");
    need(df, "output");
    vgfrft::require(d->grid.order >= 1, ErrorCode::argument, "density built without derivatives");
    vgfrft::require(j >= 0 && j < 5, ErrorCode::argument, "parameter index must be 0..4");
    const auto& v = d->grid.df[static_cast<std::size_t>(j)];
    std::copy(v.begin(), v.end(), df);
  });
}

vgf_status vgf_density_second_derivative(const vgf_density* d, int j, int k, double* d2f) {
  return guarded([&] {
    need(d, "density");
    need(d2f, "output");
    vgfrft::require(d->grid.order >= 2, ErrorCode::argument, "density built without second derivatives");
    vgfrft::require(j >= 0 && j < 5 && k >= 0 && k < 5, ErrorCode::argument,
                    "parameter index must be 0..4");
    const auto& v = d->grid.d2f[vgfrft::hessian_index(static_cast<std::size_t>(j), static_cast<std::size_t>(k))];
    std::copy(v.begin(), v.end(), d2f);
  });
}

vgf_status vgf_density_eval(const vgf_density* d, double y, double* f) {
  return guarded([&] {
    need(d, "density");
    need(f, "output");
    *f = vgfrft::eval_density(d->grid, y);
  });
}

vgf_status vgf_density_eval_cdf(const vgf_density* d, double y, double* cdf) {
  return guarded([&] {
    need(d, "density");
    need(cdf, "output");
    *cdf = std::clamp(vgfrft::eval_at(d->grid, d->cdf, y), 0.0, 1.0);
  });
}

vgf_status vgf_density_moments(const vgf_density* d, vgf_moments* out) {
  return guarded([&] {
    need(d, "density");
    need(out, "output");
    *out = to_c(vgfrft::grid_moments(d->grid));
  });
}

vgf_status vgf_density_write_csv(const vgf_density* d, const char* path, int with_cdf,
                                 int with_derivatives) {
  return guarded([&] {
    need(d, "density");
    need(path, "path");
    const std::vector<double> none;
    const auto& cdf = with_cdf ? d->cdf : none;
    vgfrft::write_text_file(path, vgfrft::density_csv(d->grid, cdf, with_derivatives != 0));
  });
}

// ---------------------------------------------------------- likelihood

vgf_status vgf_loglik(const double* y, size_t n, const vgf_params* p, const vgf_grid* grid, int order,
                      double* value, double* score, double* hessian) {
  return guarded([&] {
    need(p, "params");
    const auto state = vgfrft::evaluate(observations(y, n), to_cpp(*p), grid_or_fit_default(grid), order);
    if (value) *value = state.value;
    if (score && order >= 1)
      for (int j = 0; j < 5; ++j) score[j] = state.score(j);
    if (hessian && order >= 2)
      for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 5; ++k) hessian[5 * j + k] = state.hessian(j, k);
  });
}

// ------------------------------------------------------------- samples

vgf_status vgf_sample_from_prices(const char* path, const char* format, double scale, vgf_sample** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "output handle");
    *out = nullptr;
    const auto fmt = vgfrft::parse_price_format(format ? format : "auto");
    const auto prices = vgfrft::load_prices(path, fmt);
    auto s = std::make_unique<vgf_sample>();
    s->sample = vgfrft::log_returns(prices, scale);
    s->rejected_rows = prices.rejected.size();
    *out = s.release();
  });
}

vgf_status vgf_sample_load(const char* path, vgf_sample** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "output handle");
    *out = nullptr;
    auto s = std::make_unique<vgf_sample>();
    s->sample = vgfrft::load_sample(path);
    *out = s.release();
  });
}

vgf_status vgf_sample_open(const char* path, double scale, vgf_sample** out) {
  bool prices = false;
  const vgf_status st = guarded([&] {
    need(path, "path");
    const std::string text = vgfrft::read_text_file(path);
    std::size_t pos = 0;
    while (pos < text.size()) {
      const std::size_t nl = text.find('\n', pos);
      std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
      pos = nl == std::string::npos ? text.size() : nl + 1;
      if (line.empty() || line[0] == '#' || line == "\r") continue;
      for (char& c : line) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      prices = line.find("adjusted_close") != std::string::npos || line.find("adj close") != std::string::npos;
      break;
    }
  });
  if (st != VGF_OK) return st;
  return prices ? vgf_sample_from_prices(path, "auto", scale, out) : vgf_sample_load(path, out);
}

vgf_status vgf_sample_from_values(const double* y, size_t n, const char* description, vgf_sample** out) {
  return guarded([&] {
    need(out, "output handle");
    *out = nullptr;
    const auto values = observations(y, n);
    for (double v : values)
      vgfrft::require(std::isfinite(v), ErrorCode::argument, "sample values must be finite");
    auto s = std::make_unique<vgf_sample>();
    s->sample = vgfrft::make_sample(std::vector<double>(values.begin(), values.end()),
                                    description ? description : "values");
    *out = s.release();
  });
}

void vgf_sample_destroy(vgf_sample* s) { delete s; }

vgf_status vgf_sample_save(const vgf_sample* s, const char* path) {
  return guarded([&] {
    need(s, "sample");
    need(path, "path");
    vgfrft::save_sample(path, s->sample);
  });
}

size_t vgf_sample_size(const vgf_sample* s) { return s ? s->sample.size() : 0; }

const double* vgf_sample_values(const vgf_sample* s) { return s ? s->sample.values.data() : nullptr; }

size_t vgf_sample_rejected_rows(const vgf_sample* s) { return s ? s->rejected_rows : 0; }

vgf_status vgf_sample_filter(vgf_sample* s, const char* rule, int allow_excess) {
  return guarded([&] {
    need(s, "sample");
    need(rule, "rule");
    s->sample = vgfrft::filter_outliers(s->sample, vgfrft::OutlierRule::parse(rule), allow_excess != 0);
  });
}

size_t vgf_sample_removed_count(const vgf_sample* s) { return s ? s->sample.removed.size() : 0; }

vgf_status vgf_sample_removed(const vgf_sample* s, size_t i, size_t* index, double* value, const char** date) {
  return guarded([&] {
    need(s, "sample");
    vgfrft::require(i < s->sample.removed.size(), ErrorCode::argument, "removed index out of range");
    const auto& r = s->sample.removed[i];
    if (index) *index = r.index;
    if (value) *value = r.value;
    if (date) *date = r.date.c_str();
  });
}

// ----------------------------------------------------------- estimation

void vgf_fit_options_default(vgf_fit_options* opts) {
  if (!opts) return;
  const vgfrft::FitConfig config;
  opts->symmetric = 0;
  opts->max_iters = config.max_iters;
  opts->grad_tol = config.grad_tol;
  opts->max_halvings = config.damping.max_halvings;
  opts->max_step = config.damping.max_step;
  opts->grid = to_c(config.grid);
  opts->tail_error = config.density.tail_error;
}

vgf_status vgf_init_moments(const double* y, size_t n, int symmetric, vgf_params* out) {
  return guarded([&] {
    need(out, "output");
    *out = to_c(vgfrft::init_method_of_moments(observations(y, n), symmetric != 0));
  });
}

vgf_status vgf_fit_mle(const double* y, size_t n, const vgf_params* init, const vgf_fit_options* opts,
                       vgf_fit** out) {
  return guarded([&] {
    need(init, "init");
    need(out, "output handle");
    *out = nullptr;
    vgf_fit_options o;
    if (opts)
      o = *opts;
    else
      vgf_fit_options_default(&o);
    vgfrft::FitConfig config;
    config.init = to_cpp(*init);
    config.symmetric = o.symmetric != 0;
    config.max_iters = o.max_iters;
    config.grad_tol = o.grad_tol;
    config.damping.max_halvings = o.max_halvings;
    config.damping.max_step = o.max_step;
    config.grid = to_cpp(o.grid);
    config.density.tail_error = o.tail_error;
    auto f = std::make_unique<vgf_fit>();
    f->report = vgfrft::fit_mle(observations(y, n), config);
    *out = f.release();
  });
}

void vgf_fit_destroy(vgf_fit* f) { delete f; }

vgf_status vgf_fit_result(const vgf_fit* f, vgf_params* params, double* loglik, int* converged) {
  return guarded([&] {
    need(f, "fit");
    if (params) *params = to_c(f->report.params);
    if (loglik) *loglik = f->report.loglik;
    if (converged) *converged = f->report.converged ? 1 : 0;
  });
}

const char* vgf_fit_stop_reason(const vgf_fit* f) { return f ? f->report.stop_reason.c_str() : ""; }

size_t vgf_fit_iteration_count(const vgf_fit* f) { return f ? f->report.iterations.size() : 0; }

vgf_status vgf_fit_iteration(const vgf_fit* f, size_t i, vgf_iteration* row) {
  return guarded([&] {
    need(f, "fit");
    need(row, "output");
    vgfrft::require(i < f->report.iterations.size(), ErrorCode::argument, "iteration index out of range");
    const auto& r = f->report.iterations[i];
    *row = {r.iteration, to_c(r.params), r.loglik, r.grad_norm, to_c(r.step), r.halvings};
  });
}

vgf_status vgf_fit_hessian(const vgf_fit* f, double* hessian) {
  return guarded([&] {
    need(f, "fit");
    need(hessian, "output");
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) hessian[5 * j + k] = f->report.hessian(j, k);
  });
}

double vgf_fit_hessian_condition(const vgf_fit* f) {
  return f ? f->report.hessian_condition : std::numeric_limits<double>::quiet_NaN();
}

vgf_status vgf_fit_standard_errors(const vgf_fit* f, double* se) {
  return guarded([&] {
    need(f, "fit");
    need(se, "output");
    const auto u = vgfrft::parameter_uncertainty(f->report.hessian, f->report.model == vgfrft::ModelTag::svg);
    for (int j = 0; j < 5; ++j) se[j] = u.standard_error(j);
  });
}

vgf_status vgf_fit_write_trace(const vgf_fit* f, const char* path) {
  return guarded([&] {
    need(f, "fit");
    need(path, "path");
    vgfrft::save_trace(path, f->report.iterations);
  });
}

vgf_status vgf_fit_clm(const double* y, size_t n, double* mu, double* sigma, int* degenerate, double* loglik) {
  return guarded([&] {
    const auto fit = vgfrft::fit_clm(observations(y, n));
    if (mu) *mu = fit.mu;
    if (sigma) *sigma = fit.sigma;
    if (degenerate) *degenerate = fit.degenerate ? 1 : 0;
    if (loglik) *loglik = fit.loglik;
  });
}

// ---------------------------------------------------------------- KS

vgf_status vgf_ks_null_cdf(size_t n, double d, double* out) {
  return guarded([&] {
    need(out, "output");
    *out = vgfrft::ks_null_cdf(n, d);
  });
}

vgf_status vgf_ks_null_pdf(size_t n, const double* grid, size_t m, double* out) {
  return guarded([&] {
    need(grid, "grid");
    need(out, "output");
    const auto pdf = vgfrft::ks_null_pdf(n, {grid, m});
    std::copy(pdf.begin(), pdf.end(), out);
  });
}

vgf_status vgf_ks_p_value(size_t n, double d_n, double* out) {
  return guarded([&] {
    need(out, "output");
    *out = vgfrft::ks_p_value(n, d_n);
  });
}

vgf_status vgf_ks_write_null_csv(size_t n, const double* grid, size_t m, const char* path) {
  return guarded([&] {
    need(grid, "grid");
    need(path, "path");
    const std::span<const double> g(grid, m);
    const auto pdf = vgfrft::ks_null_pdf(n, g);
    std::vector<double> cdf(m);
    for (std::size_t i = 0; i < m; ++i) cdf[i] = vgfrft::ks_null_cdf(n, g[i]);
    vgfrft::write_text_file(path, vgfrft::ks_density_csv(n, g, pdf, cdf));
  });
}

vgf_status vgf_ks_vg(const double* y, size_t n, const vgf_params* p, const vgf_grid* grid,
                     vgf_ks_result* out) {
  return guarded([&] {
    need(p, "params");
    need(out, "output");
    const auto dg = vgfrft::density_grid(to_cpp(*p), grid_or_fit_default(grid), 0);
    const auto cdf = vgfrft::cdf_grid(dg);
    const auto r = vgfrft::ks_test(observations(y, n), [&](double x) {
      return std::clamp(vgfrft::eval_at(dg, cdf, x), 0.0, 1.0);
    });
    *out = to_c(r);
  });
}

vgf_status vgf_ks_clm(const double* y, size_t n, double mu, double sigma, vgf_ks_result* out) {
  return guarded([&] {
    need(out, "output");
    vgfrft::require(sigma > 0.0, ErrorCode::argument, "sigma must be positive");
    const auto r =
        vgfrft::ks_test(observations(y, n), [&](double x) { return vgfrft::clm_cdf(mu, sigma, x); });
    *out = to_c(r);
  });
}

// ------------------------------------------------------------ reports

vgf_status vgf_summary_save(const vgf_summary* s, const char* path) {
  return guarded([&] {
    need(s, "summary");
    need(path, "path");
    vgfrft::RunSummary r;
    r.tag = bounded(s->tag, sizeof s->tag);
    r.model = to_cpp(s->model);
    r.init = bounded(s->init, sizeof s->init);
    r.params = to_cpp(s->params);
    r.loglik = s->loglik;
    r.converged = s->converged != 0;
    r.iterations = s->iterations;
    r.grad_norm = s->grad_norm;
    r.stop_reason = bounded(s->stop_reason, sizeof s->stop_reason);
    r.sample_size = s->sample_size;
    r.hessian_condition = s->hessian_condition;
    if (s->has_ks) r.ks = to_cpp(s->ks);
    vgfrft::save_summary(path, r);
  });
}

vgf_status vgf_summary_load(const char* path, vgf_summary* out) {
  return guarded([&] {
    need(path, "path");
    need(out, "output");
    const auto r = vgfrft::load_summary(path);
    vgf_summary s{};
    copy_string(s.tag, sizeof s.tag, r.tag);
    s.model = to_c(r.model);
    copy_string(s.init, sizeof s.init, r.init);
    s.params = to_c(r.params);
    s.loglik = r.loglik;
    s.converged = r.converged ? 1 : 0;
    s.iterations = r.iterations;
    s.grad_norm = r.grad_norm;
    s.sample_size = r.sample_size;
    s.hessian_condition = r.hessian_condition;
    s.has_ks = r.ks ? 1 : 0;
    if (r.ks) s.ks = to_c(*r.ks);
    copy_string(s.stop_reason, sizeof s.stop_reason, r.stop_reason);
    *out = s;
  });
}

vgf_status vgf_report_merge(const char* const* paths, size_t count, const char* out_path) {
  return guarded([&] {
    need(paths, "paths");
    need(out_path, "output path");
    std::vector<vgfrft::RunSummary> runs;
    for (std::size_t i = 0; i < count; ++i) {
      need(paths[i], "path");
      runs.push_back(vgfrft::load_summary(paths[i]));
    }
    vgfrft::write_text_file(out_path, vgfrft::comparison_table(runs));
  });
}

vgf_status vgf_write_text(const char* path, const char* text) {
  return guarded([&] {
    need(path, "path");
    need(text, "text");
    vgfrft::write_text_file(path, text);
  });
}

vgf_status vgf_artifact_header(const char* kind, char* buf, size_t size) {
  return guarded([&] {
    need(kind, "kind");
    need(buf, "buffer");
    const std::string h = vgfrft::artifact_header(kind);
    vgfrft::require(size > h.size(), ErrorCode::size, "header buffer too small");
    copy_string(buf, size, h);
  });
}

}  // extern "C"
