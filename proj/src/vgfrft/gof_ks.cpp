// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#include "vgfrft/gof_ks.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "vgfrft/errors.hpp"

namespace vgfrft {

namespace {

// Matrix with a separate power-of-two exponent so H^n neither overflows nor
// underflows for n in the thousands.
struct ScaledMatrix {
  Eigen::MatrixXd m;
  long exponent = 0;

  void renormalise() {
    const double peak = m.cwiseAbs().maxCoeff();
    if (peak > 0.0 && (peak > 0x1p300 || peak < 0x1p-300)) {
      int e = 0;
      std::frexp(peak, &e);
      m *= std::ldexp(1.0, -e);
      exponent += e;
    }
  }
};

ScaledMatrix multiply(const ScaledMatrix& a, const ScaledMatrix& b) {
  ScaledMatrix out{a.m * b.m, a.exponent + b.exponent};
  out.renormalise();
  return out;
}

ScaledMatrix matrix_power(const ScaledMatrix& base, std::size_t n) {
  ScaledMatrix result{Eigen::MatrixXd::Identity(base.m.rows(), base.m.cols()), 0};
  ScaledMatrix square = base;
  bool first = true;
  while (n > 0) {
    if (n & 1U) {
      result = first ? square : multiply(result, square);
      first = false;
    }
    n >>= 1U;
    if (n > 0) square = multiply(square, square);
  }
  return result;
}

// Asymptotic forms used when the exact matrix would exceed kKsMaxMatrix.
double ks_asymptotic_cdf(std::size_t n, double d) {
  const double rn = std::sqrt(static_cast<double>(n));
  const double s = d * d * static_cast<double>(n);
  if (s > 7.24 || (s > 3.76 && n > 99))
    return 1.0 - 2.0 * std::exp(-(2.000071 + 0.331 / rn + 1.409 / static_cast<double>(n)) * s);
  // Kolmogorov series at the finite-n corrected argument.
  const double x = d * (rn + 0.12 + 0.11 / rn);
  if (x <= 0.0) return 0.0;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(1.0 - 2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_statistic(std::span<const double> sample, const CdfFunction& cdf) {
  require(!sample.empty(), ErrorCode::argument, "KS statistic needs a non-empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  for (double v : sorted)
    require(std::isfinite(v), ErrorCode::argument, "KS sample contains non-finite values");
  std::sort(sorted.begin(), sorted.end());

  KsResult r;
  r.n = sorted.size();
  const double n = static_cast<double>(r.n);
  double previous_cdf = -1.0;
  std::size_t below = 0;  // observations strictly before the current value
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double model = cdf(sorted[i]);
    if (!std::isfinite(model) || model < previous_cdf - 1e-12) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "model CDF is not monotone on the sample range (F(" << sorted[i] << ") = " << model
          << " after " << previous_cdf << ")";
      raise(ErrorCode::model_cdf, msg.str());
    }
    previous_cdf = model;
    const double at = static_cast<double>(j) / n;
    const double before = static_cast<double>(below) / n;
    r.d_plus = std::max(r.d_plus, std::abs(model - at));
    r.d_minus = std::max(r.d_minus, std::abs(model - before));
    below = j;
    i = j;
  }
  r.d_n = std::max(r.d_plus, r.d_minus);
  return r;
}

double ks_null_cdf(std::size_t n, double d) {
  require(n >= 1, ErrorCode::domain, "KS null distribution needs n >= 1");
  if (!(d > 0.0 && d < 1.0)) {
    std::ostringstream msg;
    msg << "KS distance " << d << " outside (0, 1)";
    raise(ErrorCode::domain, msg.str());
  }
  // P(D_n > d) <= 2 exp(-2 n d^2); below half an ulp of 1 the CDF rounds to 1.
  if (2.0 * std::exp(-2.0 * static_cast<double>(n) * d * d) < 0x1p-54) return 1.0;
  const double nd = static_cast<double>(n) * d;
  const auto k = static_cast<std::size_t>(std::floor(nd)) + 1;
  const std::size_t m = 2 * k - 1;
  if (m > kKsMaxMatrix) return ks_asymptotic_cdf(n, d);
  const double h = static_cast<double>(k) - nd;
  const auto mi = static_cast<Eigen::Index>(m);

  ScaledMatrix hm{Eigen::MatrixXd::Zero(mi, mi), 0};
  for (Eigen::Index i = 0; i < mi; ++i)
    for (Eigen::Index j = 0; j < mi; ++j)
      if (i - j + 1 >= 0) hm.m(i, j) = 1.0;
  for (Eigen::Index i = 0; i < mi; ++i) {
    hm.m(i, 0) -= std::pow(h, static_cast<double>(i + 1));
    hm.m(mi - 1, i) -= std::pow(h, static_cast<double>(mi - i));
  }
  if (2.0 * h - 1.0 > 0.0) hm.m(mi - 1, 0) += std::pow(2.0 * h - 1.0, static_cast<double>(m));
  for (Eigen::Index i = 0; i < mi; ++i)
    for (Eigen::Index j = 0; j < mi; ++j)
      if (i - j + 1 > 0)
        for (Eigen::Index g = 1; g <= i - j + 1; ++g) hm.m(i, j) /= static_cast<double>(g);

  const ScaledMatrix q = matrix_power(hm, n);
  const auto centre = static_cast<Eigen::Index>(k - 1);
  double s = q.m(centre, centre);
  long exponent = q.exponent;
  // multiply by n! / n^n
  for (std::size_t i = 1; i <= n; ++i) {
    s *= static_cast<double>(i) / static_cast<double>(n);
    if (s != 0.0 && std::abs(s) < 0x1p-300) {
      s *= 0x1p300;
      exponent -= 300;
    }
  }
  const double value = std::ldexp(s, static_cast<int>(std::clamp<long>(exponent, -4000, 4000)));
  return std::clamp(value, 0.0, 1.0);
}

std::vector<double> ks_null_pdf(std::size_t n, std::span<const double> grid) {
  require(grid.size() >= 2, ErrorCode::domain, "KS density grid needs at least two points");
  for (std::size_t i = 1; i < grid.size(); ++i)
    require(grid[i] > grid[i - 1], ErrorCode::domain, "KS density grid must be strictly increasing");
  std::vector<double> cdf(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) cdf[i] = ks_null_cdf(n, grid[i]);
  std::vector<double> pdf(grid.size());
  const std::size_t last = grid.size() - 1;
  pdf[0] = (cdf[1] - cdf[0]) / (grid[1] - grid[0]);
  pdf[last] = (cdf[last] - cdf[last - 1]) / (grid[last] - grid[last - 1]);
  for (std::size_t i = 1; i < last; ++i)
    pdf[i] = (cdf[i + 1] - cdf[i - 1]) / (grid[i + 1] - grid[i - 1]);
  return pdf;
}

double ks_p_value(std::size_t n, double d_n) {
  if (d_n >= 1.0 && d_n <= 1.0 + 1e-12) return 0.0;
  if (d_n <= 0.0 && d_n >= -1e-12) return 1.0;
  return 1.0 - ks_null_cdf(n, d_n);
}

KsResult ks_test(std::span<const double> sample, const CdfFunction& cdf) {
  KsResult r = ks_statistic(sample, cdf);
  r.p_value = ks_p_value(r.n, r.d_n);
  return r;
}

}  // namespace vgfrft
