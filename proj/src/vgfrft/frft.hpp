// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VGFRFT_FRFT_HPP
#define VGFRFT_FRFT_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vgfrft {

using Complex = std::complex<double>;
using ComplexVec = std::vector<Complex>;

bool is_power_of_two(std::size_t n) noexcept;

/// Radix-2 transform of a fixed length. Twiddles and the bit-reversal table
/// are built once and never mutated, so a plan may be shared across threads.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  /// In place: X_k = sum_j x_j exp(-2 pi i jk/n).
  void forward(std::span<Complex> data) const;
  /// In place inverse, including the 1/n normalisation.
  void inverse(std::span<Complex> data) const;

 private:
  void transform(std::span<Complex> data, bool inverse) const;

  std::size_t n_;
  std::vector<Complex> twiddles_;
  std::vector<std::uint32_t> bit_reverse_;
};

ComplexVec fft(std::span<const Complex> x);
ComplexVec ifft(std::span<const Complex> x);

/// Bailey-Swarztrauber fractional transform
///   G_k = sum_{j<n} x_j exp(-2 pi i jk delta),  0 <= k < n
/// evaluated as a chirp-modulated circular convolution of length 2n.
/// The spectrum of the chirp kernel is cached, so one plan serves any
/// number of inputs with the same (n, delta).
class FractionalTransform {
 public:
  FractionalTransform(std::size_t n, double delta);

  std::size_t size() const noexcept { return n_; }
  double delta() const noexcept { return delta_; }

  ComplexVec apply(std::span<const Complex> x) const;

 private:
  std::size_t n_;
  double delta_;
  FftPlan plan_;
  ComplexVec chirp_;           // exp(-pi i j^2 delta), j < n
  ComplexVec kernel_spectrum_; // DFT of the 2n-periodic conjugate chirp
};

ComplexVec frft(std::span<const Complex> x, double delta);

/// Discretisation shared by the forward CF samples and the inverted density.
/// Input nodes t_j = (j - n/2) beta, output nodes x_k = (k - n/2) gamma.
struct FrftGrid {
  double a = 20.0;
  std::size_t n = 2048;
  double beta = 20.0 / 2048.0;
  double gamma = 20.0 / 2048.0;
  double delta_frft = (20.0 / 2048.0) * (20.0 / 2048.0) / (2.0 * 3.14159265358979323846);

  /// Consistent grid; gamma <= 0 selects gamma = beta.
  static FrftGrid make(double a, std::size_t n, double gamma = 0.0);
  /// a = 20, n = 2048, beta = gamma = a/n.
  static FrftGrid compact_default();
  /// Wide CF support for likelihood work: n = 2^17, beta = 0.1, output
  /// nodes covering [-20, 20).
  static FrftGrid fit_default();

  /// Throws ErrorCode::contract when the stored fields disagree.
  void validate() const;

  double input_node(std::size_t j) const noexcept;
  double output_node(std::size_t k) const noexcept;
  double output_min() const noexcept { return output_node(0); }
  double output_max() const noexcept { return output_node(n - 1); }
};

struct InvertedDensity {
  std::vector<double> values;
  /// max(|F(t_0)|, |F(t_{n-1})|): CF magnitude at the truncation edges.
  double tail_magnitude = 0.0;
  bool tail_warning = false;
  /// Largest imaginary residue left after removing the unpaired t = -a/2 sample.
  double max_imag_residue = 0.0;
};

inline constexpr double kTailWarnThreshold = 1e-10;
inline constexpr double kImagResidueLimit = 1e-8;

/// Turns CF samples on the grid's input nodes into density values on its
/// output nodes (Riemann sum of the inverse Fourier integral via FRFT at
/// fraction -delta). Reusable for many CFs on one grid.
class CfInverter {
 public:
  explicit CfInverter(const FrftGrid& grid);

  const FrftGrid& grid() const noexcept { return grid_; }
  InvertedDensity invert(std::span<const Complex> cf_samples) const;

 private:
  FrftGrid grid_;
  FractionalTransform transform_;
  ComplexVec input_phase_;   // exp(-pi i j n delta)
  ComplexVec output_phase_;  // beta/(2 pi) exp(-pi i (k - n/2) n delta)
};

InvertedDensity invert_cf(std::span<const Complex> cf_samples, const FrftGrid& grid);

/// Trapezoid rule on a uniform grid.
double trapezoid(std::span<const double> values, double step);

}  // namespace vgfrft

#endif  // VGFRFT_FRFT_HPP
