// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VGFRFT_GOF_KS_HPP
#define VGFRFT_GOF_KS_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace vgfrft {

struct KsResult {
  double d_plus = 0.0;   // max |F(x_j) - F_n(x_j)|
  double d_minus = 0.0;  // max |F(x_j) - F_n(x_{j-1})|
  double d_n = 0.0;
  double p_value = std::numeric_limits<double>::quiet_NaN();
  std::size_t n = 0;
};

using CdfFunction = std::function<double(double)>;

/// One-sample statistic over the sorted distinct observations; tied values
/// move the empirical CDF by multiplicity/n. p_value is left unset.
KsResult ks_statistic(std::span<const double> sample, const CdfFunction& cdf);

/// Largest Durbin matrix the exact method will build before switching to
/// the corrected asymptotic tail.
inline constexpr std::size_t kKsMaxMatrix = 2000;

/// Exact P(D_n <= d) for d in (0, 1) (Marsaglia-Tsang-Wang matrix power).
double ks_null_cdf(std::size_t n, double d);

/// Central differences of ks_null_cdf over a strictly increasing grid in (0, 1)
/// (one-sided at the ends).
std::vector<double> ks_null_pdf(std::size_t n, std::span<const double> grid);

/// P(D_n > d_n); d_n = 0 gives 1 and d_n = 1 gives 0.
double ks_p_value(std::size_t n, double d_n);

/// Statistic plus p-value.
KsResult ks_test(std::span<const double> sample, const CdfFunction& cdf);

}  // namespace vgfrft

#endif  // VGFRFT_GOF_KS_HPP
