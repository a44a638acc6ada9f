// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#include "vgfrft/frft.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vgfrft/errors.hpp"

namespace vgfrft {

namespace {

// exp(i pi a b). The product is split into its rounded value and exact
// rounding error before reduction mod 2, so chirp phases with a b ~ 1e6
// keep full precision.
Complex half_turns(double a, double b) {
  const double p = a * b;
  const double err = std::fma(a, b, -p);
  const double r = std::remainder(p, 2.0) + err;
  return std::polar(1.0, std::numbers::pi * r);
}

void require_finite(std::span<const Complex> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i].real()) || !std::isfinite(x[i].imag())) {
      std::ostringstream msg;
      msg << "non-finite input at index " << i;
      raise(ErrorCode::numeric, msg.str());
    }
  }
}

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-13 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

// ---------------------------------------------------------------------------
// FftPlan

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (!is_power_of_two(n)) {
    std::ostringstream msg;
    msg << "FFT length " << n << " is not a positive power of two";
    raise(ErrorCode::size, msg.str());
  }
  twiddles_.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k)
    twiddles_[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) /
                                       static_cast<double>(n));

  bit_reverse_.resize(n);
  unsigned bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (unsigned b = 0; b < bits; ++b)
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    bit_reverse_[i] = static_cast<std::uint32_t>(r);
  }
}

void FftPlan::forward(std::span<Complex> data) const { transform(data, false); }

void FftPlan::inverse(std::span<Complex> data) const {
  transform(data, true);
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : data) v *= scale;
}

void FftPlan::transform(std::span<Complex> data, bool inverse) const {
  if (data.size() != n_) {
    std::ostringstream msg;
    msg << "FFT plan of length " << n_ << " applied to " << data.size() << " values";
    raise(ErrorCode::size, msg.str());
  }
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j = bit_reverse_[i];
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        Complex w = twiddles_[k * stride];
        if (inverse) w = std::conj(w);
        const Complex u = data[start + k];
        const Complex v = data[start + k + half] * w;
        data[start + k] = u + v;
        data[start + k + half] = u - v;
      }
    }
  }
}

ComplexVec fft(std::span<const Complex> x) {
  FftPlan plan(x.size());
  ComplexVec out(x.begin(), x.end());
  plan.forward(out);
  return out;
}

ComplexVec ifft(std::span<const Complex> x) {
  FftPlan plan(x.size());
  ComplexVec out(x.begin(), x.end());
  plan.inverse(out);
  return out;
}

// ---------------------------------------------------------------------------
// FractionalTransform

FractionalTransform::FractionalTransform(std::size_t n, double delta)
    : n_(n), delta_(delta), plan_(is_power_of_two(n) ? 2 * n : n) {
  require(std::isfinite(delta), ErrorCode::argument, "FRFT fraction must be finite");
  const std::size_t m = 2 * n;
  chirp_.resize(n);
  kernel_spectrum_.assign(m, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) {
    const double jj = static_cast<double>(j) * static_cast<double>(j);
    chirp_[j] = half_turns(-jj, delta);
    kernel_spectrum_[j] = std::conj(chirp_[j]);
  }
  // z_j = exp(pi i (j - 2n)^2 delta) for n <= j < 2n
  for (std::size_t j = n; j < m; ++j) {
    const double d = static_cast<double>(m - j);
    kernel_spectrum_[j] = half_turns(d * d, delta);
  }
  plan_.forward(kernel_spectrum_);
}

ComplexVec FractionalTransform::apply(std::span<const Complex> x) const {
  if (x.size() != n_) {
    std::ostringstream msg;
    msg << "FRFT plan of length " << n_ << " applied to " << x.size() << " values";
    raise(ErrorCode::size, msg.str());
  }
  require_finite(x);
  ComplexVec work(2 * n_, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < n_; ++j) work[j] = x[j] * chirp_[j];
  plan_.forward(work);
  for (std::size_t j = 0; j < work.size(); ++j) work[j] *= kernel_spectrum_[j];
  plan_.inverse(work);
  ComplexVec out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = chirp_[k] * work[k];
  return out;
}

ComplexVec frft(std::span<const Complex> x, double delta) {
  return FractionalTransform(x.size(), delta).apply(x);
}

// ---------------------------------------------------------------------------
// FrftGrid

FrftGrid FrftGrid::make(double a, std::size_t n, double gamma) {
  FrftGrid g;
  g.a = a;
  g.n = n;
  g.beta = a / static_cast<double>(n);
  g.gamma = gamma > 0.0 ? gamma : g.beta;
  g.delta_frft = g.beta * g.gamma / (2.0 * std::numbers::pi);
  g.validate();
  return g;
}

FrftGrid FrftGrid::compact_default() { return make(20.0, 2048); }

FrftGrid FrftGrid::fit_default() {
  constexpr std::size_t n = std::size_t{1} << 17;
  return make(0.1 * static_cast<double>(n), n, 40.0 / static_cast<double>(n));
}

void FrftGrid::validate() const {
  require(is_power_of_two(n), ErrorCode::size, "grid size n must be a power of two");
  require(n >= 4, ErrorCode::size, "grid size n must be at least 4");
  require(std::isfinite(a) && a > 0.0, ErrorCode::contract, "CF support a must be positive");
  require(std::isfinite(gamma) && gamma > 0.0, ErrorCode::contract,
          "output step gamma must be positive");
  if (!nearly_equal(beta, a / static_cast<double>(n))) {
    std::ostringstream msg;
    msg << "grid inconsistency: beta=" << beta << " but a/n=" << a / static_cast<double>(n);
    raise(ErrorCode::contract, msg.str());
  }
  const double expected = beta * gamma / (2.0 * std::numbers::pi);
  if (!nearly_equal(delta_frft, expected)) {
    std::ostringstream msg;
    msg << "grid inconsistency: delta_frft=" << delta_frft << " but beta*gamma/(2pi)="
        << expected;
    raise(ErrorCode::contract, msg.str());
  }
}

double FrftGrid::input_node(std::size_t j) const noexcept {
  return (static_cast<double>(j) - static_cast<double>(n / 2)) * beta;
}

double FrftGrid::output_node(std::size_t k) const noexcept {
  return (static_cast<double>(k) - static_cast<double>(n / 2)) * gamma;
}

// ---------------------------------------------------------------------------
// CfInverter

CfInverter::CfInverter(const FrftGrid& grid)
    : grid_((grid.validate(), grid)), transform_(grid.n, -grid.delta_frft) {
  const std::size_t n = grid_.n;
  const double n_delta = static_cast<double>(n) * grid_.delta_frft;
  const double half_n = static_cast<double>(n / 2);
  const double weight = grid_.beta / (2.0 * std::numbers::pi);
  input_phase_.resize(n);
  output_phase_.resize(n);
  for (std::size_t j = 0; j < n; ++j) input_phase_[j] = half_turns(-static_cast<double>(j), n_delta);
  for (std::size_t k = 0; k < n; ++k) {
    const double shifted = static_cast<double>(k) - half_n;
    output_phase_[k] = weight * half_turns(-shifted, n_delta);
  }
}

InvertedDensity CfInverter::invert(std::span<const Complex> cf_samples) const {
  const std::size_t n = grid_.n;
  if (cf_samples.size() != n) {
    std::ostringstream msg;
    msg << "expected " << n << " CF samples, got " << cf_samples.size();
    raise(ErrorCode::size, msg.str());
  }
  ComplexVec input(n);
  for (std::size_t j = 0; j < n; ++j) input[j] = cf_samples[j] * input_phase_[j];
  const ComplexVec g = transform_.apply(input);

  InvertedDensity out;
  out.values.resize(n);
  out.tail_magnitude = std::max(std::abs(cf_samples.front()), std::abs(cf_samples.back()));
  out.tail_warning = out.tail_magnitude > kTailWarnThreshold;

  // The t_0 = -a/2 sample has no +a/2 partner; taking the real part pairs it
  // with its conjugate (half weight each). Whatever imaginary part remains
  // beyond that edge term is genuine non-Hermitian residue. The edge term's
  // kernel (beta/2pi) exp(i t_0 x_k) coincides with output_phase_.
  const Complex edge = cf_samples.front();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex v = output_phase_[k] * g[k];
    out.values[k] = v.real();
    const double residue = std::abs(v.imag() - (edge * output_phase_[k]).imag());
    out.max_imag_residue = std::max(out.max_imag_residue, residue);
  }
  // Roundoff grows with the L1 mass of the input, which is O(1) for a
  // density's CF but can be large for non-decaying derivative transforms.
  double l1 = 0.0;
  for (const auto& v : cf_samples) l1 += std::abs(v);
  l1 *= grid_.beta / (2.0 * std::numbers::pi);
  const double limit = kImagResidueLimit * std::max(1.0, l1);
  if (!(out.max_imag_residue < limit)) {
    std::ostringstream msg;
    msg << "inverted density has imaginary residue " << out.max_imag_residue
        << " (limit " << limit << "); input is not the CF of a real function";
    raise(ErrorCode::numeric, msg.str());
  }
  return out;
}

InvertedDensity invert_cf(std::span<const Complex> cf_samples, const FrftGrid& grid) {
  return CfInverter(grid).invert(cf_samples);
}

double trapezoid(std::span<const double> values, double step) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * step;
}

}  // namespace vgfrft
