// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VGFRFT_VG_MODEL_HPP
#define VGFRFT_VG_MODEL_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vgfrft/frft.hpp"

namespace vgfrft {

inline constexpr std::size_t kNumParams = 5;
inline constexpr std::size_t kNumHessian = 15;

/// Index order of every 5-vector in the library.
enum class Param : std::size_t { mu = 0, delta = 1, sigma = 2, alpha = 3, theta = 4 };

/// Variance-Gamma parameters: Y = mu + delta V + sigma sqrt(V) Z with
/// V ~ Gamma(shape alpha, scale theta), Z ~ N(0, 1).
struct VgParams {
  double mu = 0.0;
  double delta = 0.0;
  double sigma = 1.0;
  double alpha = 1.0;
  double theta = 1.0;

  /// Throws ErrorCode::argument unless finite with sigma, alpha, theta > 0.
  void validate() const;

  std::array<double, kNumParams> to_array() const { return {mu, delta, sigma, alpha, theta}; }
  static VgParams from_array(const std::array<double, kNumParams>& v) {
    return {v[0], v[1], v[2], v[3], v[4]};
  }

  friend bool operator==(const VgParams&, const VgParams&) = default;
};

/// Position of (j, k) among the 15 distinct second derivatives, stored
/// row-major over the upper triangle: (0,0), (0,1), ..., (0,4), (1,1), ...
constexpr std::size_t hessian_index(std::size_t j, std::size_t k) {
  if (j > k) std::swap(j, k);
  return j * kNumParams - j * (j + 1) / 2 + k;
}

/// exp(-i mu t) / (1 + theta sigma^2 t^2 / 2 + i delta theta t)^alpha, principal
/// branch. Re D(t) >= 1 for real t, so the branch cut is never crossed.
Complex cf(const VgParams& p, double t);
std::array<Complex, kNumParams> cf_gradient(const VgParams& p, double t);
std::array<Complex, kNumHessian> cf_hessian(const VgParams& p, double t);

/// Tail-decay policy for density grids.
struct DensityOptions {
  double tail_warn = kTailWarnThreshold;
  double tail_error = 1e-6;
  /// Reject grids whose f dips below -1e-8 or whose mass misses 1 by > 1e-5.
  bool check_invariants = true;
};

/// Tabulated density (and optionally its parameter derivatives) on the
/// output nodes of one FRFT grid. Immutable once built.
struct DensityGrid {
  FrftGrid grid;
  int order = 0;
  std::vector<double> f;
  std::array<std::vector<double>, kNumParams> df;
  std::array<std::vector<double>, kNumHessian> d2f;
  double tail_magnitude = 0.0;
  bool tail_warning = false;

  std::size_t size() const noexcept { return f.size(); }
  double node(std::size_t k) const noexcept { return grid.output_node(k); }
};

DensityGrid density_grid(const VgParams& p, const FrftGrid& grid, int order,
                         const DensityOptions& options = {});

/// Cumulative trapezoid of dg.f, clamped to [0, 1] and made non-decreasing.
std::vector<double> cdf_grid(const DensityGrid& dg);

/// Local cubic (4-point Lagrange) interpolation of values tabulated on a
/// uniform grid. Points must lie in the central 90% of the node span.
class GridInterpolator {
 public:
  GridInterpolator(double x0, double step, std::size_t count);
  GridInterpolator(const FrftGrid& grid);

  bool in_span(double y) const noexcept;
  /// Throws ErrorCode::span when y is outside the central 90% of the grid.
  double operator()(std::span<const double> values, double y) const;

  struct Stencil {
    std::size_t first;
    std::array<double, 4> weights;
  };
  Stencil stencil(double y) const;

 private:
  double x0_;
  double step_;
  std::size_t count_;
  double lo_;
  double hi_;
};

inline constexpr double kDensityFloor = 1e-300;

/// Density at y, floored at 1e-300.
double eval_density(const DensityGrid& dg, double y);
/// Tabulated sequence (e.g. a CDF from cdf_grid) at y, no floor.
double eval_at(const DensityGrid& dg, std::span<const double> values, double y);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;  // non-excess
};

/// Closed-form moments from the cumulant generating function
/// K(s) = mu s - alpha log(1 - delta theta s - theta sigma^2 s^2 / 2).
Moments moments(const VgParams& p);
/// Moments of the tabulated density (trapezoid rule on the output grid).
Moments grid_moments(const DensityGrid& dg);

/// Deterministic draws mu + delta v + sigma sqrt(v) z, v ~ Gamma(alpha, theta).
std::vector<double> sample(const VgParams& p, std::size_t count, std::uint64_t seed);

/// Gaussian return density of the classical lognormal model.
double clm_density(double mu, double sigma, double y);
double clm_cdf(double mu, double sigma, double y);

}  // namespace vgfrft

#endif  // VGFRFT_VG_MODEL_HPP
