// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#include "vgfrft/likelihood.hpp"

#include <cmath>
#include <sstream>

#include "vgfrft/errors.hpp"

namespace vgfrft {

namespace {

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

struct Accumulator {
  CompensatedSum value;
  std::array<CompensatedSum, kNumParams> score;
  std::array<CompensatedSum, kNumHessian> hessian;

  void merge(const Accumulator& other) {
    value.add(other.value.value());
    for (std::size_t j = 0; j < kNumParams; ++j) score[j].add(other.score[j].value());
    for (std::size_t h = 0; h < kNumHessian; ++h) hessian[h].add(other.hessian[h].value());
  }
};

double interpolate(const GridInterpolator::Stencil& st, const std::vector<double>& values) {
  double v = 0.0;
  for (std::size_t m = 0; m < 4; ++m) v += st.weights[m] * values[st.first + m];
  return v;
}

[[noreturn]] void non_finite(std::size_t index, double y) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "non-finite log-likelihood contribution at observation " << index << " (y=" << y << ")";
  raise(ErrorCode::numeric, msg.str());
}

}  // namespace

LikelihoodState evaluate_on_grid(std::span<const double> sample, const DensityGrid& dg,
                                 const VgParams& params, int order) {
  require(!sample.empty(), ErrorCode::argument, "likelihood needs a non-empty sample");
  require(order >= 0 && order <= 2, ErrorCode::argument, "derivative order must be 0, 1 or 2");
  require(dg.order >= order, ErrorCode::argument, "density grid lacks the requested derivatives");

  const GridInterpolator interp(dg.grid);
  Accumulator total;
  for (std::size_t begin = 0; begin < sample.size(); begin += kLikelihoodChunk) {
    const std::size_t end = std::min(sample.size(), begin + kLikelihoodChunk);
    Accumulator part;
    for (std::size_t i = begin; i < end; ++i) {
      const double y = sample[i];
      if (!std::isfinite(y)) non_finite(i, y);
      if (!interp.in_span(y)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "observation " << i << " (y=" << y << ") lies outside the grid span ["
            << dg.grid.output_min() << ", " << dg.grid.output_max()
            << "] minus a 5% margin; increase the output span of the grid";
        raise(ErrorCode::span, msg.str());
      }
      const auto st = interp.stencil(y);
      const double raw = interpolate(st, dg.f);
      const double f = std::max(raw, kDensityFloor);
      const double log_f = std::log(f);
      if (!std::isfinite(log_f)) non_finite(i, y);
      part.value.add(log_f);
      // The floored density is locally constant in the parameters.
      if (order == 0 || raw <= kDensityFloor) continue;

      std::array<double, kNumParams> ratio{};
      for (std::size_t j = 0; j < kNumParams; ++j) {
        ratio[j] = interpolate(st, dg.df[j]) / f;
        if (!std::isfinite(ratio[j])) non_finite(i, y);
        part.score[j].add(ratio[j]);
      }
      if (order == 1) continue;
      for (std::size_t j = 0; j < kNumParams; ++j) {
        for (std::size_t k = j; k < kNumParams; ++k) {
          const std::size_t h = hessian_index(j, k);
          const double term = interpolate(st, dg.d2f[h]) / f - ratio[j] * ratio[k];
          if (!std::isfinite(term)) non_finite(i, y);
          part.hessian[h].add(term);
        }
      }
    }
    total.merge(part);
  }

  LikelihoodState state;
  state.params = params;
  state.order = order;
  state.value = total.value.value();
  state.tail_magnitude = dg.tail_magnitude;
  state.tail_warning = dg.tail_warning;
  if (!std::isfinite(state.value)) non_finite(sample.size() - 1, sample.back());
  if (order >= 1)
    for (std::size_t j = 0; j < kNumParams; ++j) state.score(j) = total.score[j].value();
  if (order >= 2) {
    for (std::size_t j = 0; j < kNumParams; ++j)
      for (std::size_t k = j; k < kNumParams; ++k) {
        const double v = total.hessian[hessian_index(j, k)].value();
        state.hessian(j, k) = v;
        state.hessian(k, j) = v;
      }
  }
  return state;
}

LikelihoodState evaluate(std::span<const double> sample, const VgParams& params,
                         const FrftGrid& grid, int order, const DensityOptions& options) {
  require(!sample.empty(), ErrorCode::argument, "likelihood needs a non-empty sample");
  const DensityGrid dg = density_grid(params, grid, order, options);
  return evaluate_on_grid(sample, dg, params, order);
}

}  // namespace vgfrft
