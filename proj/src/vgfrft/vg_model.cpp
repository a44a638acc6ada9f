// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#include "vgfrft/vg_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "vgfrft/errors.hpp"

namespace vgfrft {

namespace {

constexpr std::size_t kMu = 0, kDelta = 1, kSigma = 2, kAlpha = 3, kTheta = 4;
constexpr Complex kI{0.0, 1.0};

// Everything the CF derivatives are assembled from. With
// D = 1 + theta sigma^2 t^2/2 + i delta theta t and F = exp(-i mu t) D^-alpha,
// every first derivative is F g_p with
//   g_mu = -i t,  g_alpha = -log D,  g_p = -alpha D_p / D  (p in delta, sigma, theta).
struct CfTerms {
  Complex value;
  Complex d;
  Complex log_d;
  std::array<Complex, kNumParams> d_first{};  // dD/dV_p
  std::array<Complex, kNumParams> g{};
  double t = 0.0;
};

CfTerms cf_terms(const VgParams& p, double t) {
  CfTerms c;
  c.t = t;
  const double t2 = t * t;
  c.d = Complex{1.0 + 0.5 * p.theta * p.sigma * p.sigma * t2, p.delta * p.theta * t};
  c.log_d = std::log(c.d);
  c.value = std::exp(Complex{0.0, -p.mu * t} - p.alpha * c.log_d);
  c.d_first[kDelta] = kI * (p.theta * t);
  c.d_first[kSigma] = Complex{p.theta * p.sigma * t2, 0.0};
  c.d_first[kTheta] = Complex{0.5 * p.sigma * p.sigma * t2, p.delta * t};
  c.g[kMu] = Complex{0.0, -t};
  c.g[kAlpha] = -c.log_d;
  for (std::size_t q : {kDelta, kSigma, kTheta}) c.g[q] = -p.alpha * c.d_first[q] / c.d;
  return c;
}

// d^2 D / dV_p dV_q for p, q in {delta, sigma, theta}.
Complex d_second(const VgParams& p, double t, std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  if (a == kDelta && b == kTheta) return kI * t;
  if (a == kSigma && b == kSigma) return Complex{p.theta * t * t, 0.0};
  if (a == kSigma && b == kTheta) return Complex{p.sigma * t * t, 0.0};
  return Complex{0.0, 0.0};
}

// dg_a / dV_b
Complex g_derivative(const VgParams& p, const CfTerms& c, std::size_t a, std::size_t b) {
  if (a == kMu || b == kMu) return {0.0, 0.0};
  if (a == kAlpha && b == kAlpha) return {0.0, 0.0};
  if (a == kAlpha) return -c.d_first[b] / c.d;
  if (b == kAlpha) return -c.d_first[a] / c.d;
  const Complex ratio_a = c.d_first[a] / c.d;
  const Complex ratio_b = c.d_first[b] / c.d;
  return -p.alpha * (d_second(p, c.t, a, b) / c.d - ratio_a * ratio_b);
}

double trapezoid_moment(const DensityGrid& dg, double center, int power) {
  std::vector<double> w(dg.size());
  for (std::size_t k = 0; k < w.size(); ++k)
    w[k] = std::pow(dg.node(k) - center, power) * dg.f[k];
  return trapezoid(w, dg.grid.gamma);
}

}  // namespace

void VgParams::validate() const {
  const bool finite = std::isfinite(mu) && std::isfinite(delta) && std::isfinite(sigma) &&
                      std::isfinite(alpha) && std::isfinite(theta);
  if (!finite || !(sigma > 0.0) || !(alpha > 0.0) || !(theta > 0.0)) {
    std::ostringstream msg;
    msg << "invalid VG parameters (mu=" << mu << ", delta=" << delta << ", sigma=" << sigma
        << ", alpha=" << alpha << ", theta=" << theta
        << "); sigma, alpha, theta must be positive and all finite";
    raise(ErrorCode::argument, msg.str());
  }
}

Complex cf(const VgParams& p, double t) {
  p.validate();
  return cf_terms(p, t).value;
}

std::array<Complex, kNumParams> cf_gradient(const VgParams& p, double t) {
  p.validate();
  const CfTerms c = cf_terms(p, t);
  std::array<Complex, kNumParams> out{};
  for (std::size_t j = 0; j < kNumParams; ++j) out[j] = c.value * c.g[j];
  return out;
}

std::array<Complex, kNumHessian> cf_hessian(const VgParams& p, double t) {
  p.validate();
  const CfTerms c = cf_terms(p, t);
  std::array<Complex, kNumHessian> out{};
  for (std::size_t j = 0; j < kNumParams; ++j)
    for (std::size_t k = j; k < kNumParams; ++k)
      out[hessian_index(j, k)] = c.value * (c.g[j] * c.g[k] + g_derivative(p, c, j, k));
  return out;
}

DensityGrid density_grid(const VgParams& p, const FrftGrid& grid, int order,
                         const DensityOptions& options) {
  p.validate();
  grid.validate();
  require(order >= 0 && order <= 2, ErrorCode::argument, "derivative order must be 0, 1 or 2");

  DensityGrid dg;
  dg.grid = grid;
  dg.order = order;
  const double half_support = 0.5 * grid.a;
  dg.tail_magnitude =
      std::max(std::abs(cf_terms(p, -half_support).value), std::abs(cf_terms(p, half_support).value));
  dg.tail_warning = dg.tail_magnitude > options.tail_warn;
  if (dg.tail_magnitude > options.tail_error) {
    std::ostringstream msg;
    msg << "characteristic function has not decayed at |t| = a/2 = " << half_support
        << " (|cf| = " << dg.tail_magnitude << " > " << options.tail_error
        << "); increase the grid support a";
    raise(ErrorCode::grid_support, msg.str());
  }

  const std::size_t n = grid.n;
  const std::size_t channels = order == 0 ? 1 : (order == 1 ? 1 + kNumParams : 1 + kNumParams + kNumHessian);
  std::vector<ComplexVec> samples(channels, ComplexVec(n));
  for (std::size_t j = 0; j < n; ++j) {
    const double t = grid.input_node(j);
    const CfTerms c = cf_terms(p, t);
    samples[0][j] = c.value;
    if (order >= 1)
      for (std::size_t a = 0; a < kNumParams; ++a) samples[1 + a][j] = c.value * c.g[a];
    if (order >= 2)
      for (std::size_t a = 0; a < kNumParams; ++a)
        for (std::size_t b = a; b < kNumParams; ++b)
          samples[1 + kNumParams + hessian_index(a, b)][j] =
              c.value * (c.g[a] * c.g[b] + g_derivative(p, c, a, b));
  }

  const CfInverter inverter(grid);
  dg.f = inverter.invert(samples[0]).values;
  if (order >= 1)
    for (std::size_t a = 0; a < kNumParams; ++a) dg.df[a] = inverter.invert(samples[1 + a]).values;
  if (order >= 2)
    for (std::size_t h = 0; h < kNumHessian; ++h)
      dg.d2f[h] = inverter.invert(samples[1 + kNumParams + h]).values;

  if (options.check_invariants) {
    const double min_f = *std::min_element(dg.f.begin(), dg.f.end());
    const double mass = trapezoid(dg.f, grid.gamma);
    if (min_f < -1e-8 || std::abs(mass - 1.0) > 1e-5) {
      std::ostringstream msg;
      msg << "density grid violates support invariants (min f = " << min_f
          << ", mass = " << mass << "); widen the output span or increase a";
      raise(ErrorCode::grid_support, msg.str());
    }
    if (order >= 1) {
      for (std::size_t a = 0; a < kNumParams; ++a) {
        const double m = trapezoid(dg.df[a], grid.gamma);
        if (std::abs(m) > 1e-5) {
          std::ostringstream msg;
          msg << "derivative grid " << a << " integrates to " << m << " instead of 0";
          raise(ErrorCode::grid_support, msg.str());
        }
      }
    }
  }
  return dg;
}

std::vector<double> cdf_grid(const DensityGrid& dg) {
  require(!dg.f.empty(), ErrorCode::argument, "density grid is empty");
  const double h = dg.grid.gamma;
  std::vector<double> out(dg.f.size());
  double acc = 0.0;
  out[0] = 0.0;
  for (std::size_t k = 1; k < dg.f.size(); ++k) {
    acc += 0.5 * h * (dg.f[k - 1] + dg.f[k]);
    out[k] = acc;
  }
  if (std::abs(acc - 1.0) > 1e-4) {
    std::ostringstream msg;
    msg << "density mass on the grid is " << acc << "; the grid does not support the law";
    raise(ErrorCode::grid_support, msg.str());
  }
  double running = 0.0;
  for (auto& v : out) {
    running = std::max(running, std::clamp(v, 0.0, 1.0));
    v = running;
  }
  return out;
}

// ---------------------------------------------------------------------------
// GridInterpolator

GridInterpolator::GridInterpolator(double x0, double step, std::size_t count)
    : x0_(x0), step_(step), count_(count) {
  require(count >= 4 && step > 0.0, ErrorCode::argument, "interpolation grid needs >= 4 nodes");
  const double width = step * static_cast<double>(count - 1);
  lo_ = x0 + 0.05 * width;
  hi_ = x0 + 0.95 * width;
}

GridInterpolator::GridInterpolator(const FrftGrid& grid)
    : GridInterpolator(grid.output_node(0), grid.gamma, grid.n) {}

bool GridInterpolator::in_span(double y) const noexcept { return y >= lo_ && y <= hi_; }

GridInterpolator::Stencil GridInterpolator::stencil(double y) const {
  if (!in_span(y)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "point " << y << " lies outside the interpolation span [" << lo_ << ", " << hi_
        << "]; increase the output span of the grid";
    raise(ErrorCode::span, msg.str());
  }
  const double u = (y - x0_) / step_;
  auto i = static_cast<std::size_t>(std::floor(u));
  i = std::clamp<std::size_t>(i, 1, count_ - 3);
  const double s = u - static_cast<double>(i);
  Stencil st;
  st.first = i - 1;
  st.weights = {-s * (s - 1.0) * (s - 2.0) / 6.0, (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0,
                -(s + 1.0) * s * (s - 2.0) / 2.0, (s + 1.0) * s * (s - 1.0) / 6.0};
  return st;
}

double GridInterpolator::operator()(std::span<const double> values, double y) const {
  require(values.size() == count_, ErrorCode::size, "tabulated values do not match the grid");
  const Stencil st = stencil(y);
  double v = 0.0;
  for (std::size_t m = 0; m < 4; ++m) v += st.weights[m] * values[st.first + m];
  return v;
}

double eval_density(const DensityGrid& dg, double y) {
  return std::max(GridInterpolator(dg.grid)(dg.f, y), kDensityFloor);
}

double eval_at(const DensityGrid& dg, std::span<const double> values, double y) {
  return GridInterpolator(dg.grid)(values, y);
}

// ---------------------------------------------------------------------------
// Moments, sampling, CLM

Moments moments(const VgParams& p) {
  p.validate();
  const double drift = p.delta * p.theta;                  // coefficient of s
  const double quad = 0.5 * p.theta * p.sigma * p.sigma;  // coefficient of s^2
  const double k2 = p.alpha * (2.0 * quad + drift * drift);
  const double k3 = p.alpha * (6.0 * drift * quad + 2.0 * drift * drift * drift);
  const double k4 = p.alpha * (12.0 * quad * quad + 24.0 * drift * drift * quad +
                               6.0 * drift * drift * drift * drift);
  Moments m;
  m.mean = p.mu + p.alpha * drift;
  m.variance = k2;
  m.skewness = k3 / std::pow(k2, 1.5);
  m.kurtosis = 3.0 + k4 / (k2 * k2);
  return m;
}

Moments grid_moments(const DensityGrid& dg) {
  const double mass = trapezoid(dg.f, dg.grid.gamma);
  Moments m;
  m.mean = trapezoid_moment(dg, 0.0, 1) / mass;
  const double m2 = trapezoid_moment(dg, m.mean, 2) / mass;
  const double m3 = trapezoid_moment(dg, m.mean, 3) / mass;
  const double m4 = trapezoid_moment(dg, m.mean, 4) / mass;
  m.variance = m2;
  m.skewness = m3 / std::pow(m2, 1.5);
  m.kurtosis = m4 / (m2 * m2);
  return m;
}

std::vector<double> sample(const VgParams& p, std::size_t count, std::uint64_t seed) {
  p.validate();
  require(count >= 1, ErrorCode::argument, "sample count must be at least 1");
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> activity(p.alpha, p.theta);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> out(count);
  for (auto& y : out) {
    const double v = activity(rng);
    const double z = noise(rng);
    y = p.mu + p.delta * v + p.sigma * std::sqrt(v) * z;
  }
  return out;
}

double clm_density(double mu, double sigma, double y) {
  require(sigma > 0.0, ErrorCode::argument, "CLM sigma must be positive");
  const double z = (y - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double clm_cdf(double mu, double sigma, double y) {
  require(sigma > 0.0, ErrorCode::argument, "CLM sigma must be positive");
  return 0.5 * std::erfc(-(y - mu) / (sigma * std::numbers::sqrt2));
}

}  // namespace vgfrft
