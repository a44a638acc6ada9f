// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VGFRFT_LIKELIHOOD_HPP
#define VGFRFT_LIKELIHOOD_HPP

#include <Eigen/Dense>
#include <span>

#include "vgfrft/vg_model.hpp"

namespace vgfrft {

using Vector5 = Eigen::Matrix<double, 5, 1>;
using Matrix5 = Eigen::Matrix<double, 5, 5>;

struct LikelihoodState {
  VgParams params;
  int order = 0;
  double value = 0.0;                 // log-likelihood, nats
  Vector5 score = Vector5::Zero();    // dl/dV
  Matrix5 hessian = Matrix5::Zero();  // d2l/dV dV (observed, not negated)
  double tail_magnitude = 0.0;
  bool tail_warning = false;
};

/// Observations per compensated partial sum. Partials are merged in index
/// order, so the result does not depend on how partitions are scheduled.
inline constexpr std::size_t kLikelihoodChunk = 1024;

/// l = sum log f(y_i), score = sum f'/f, hessian = sum (f''/f - f' f'^T / f^2),
/// all from a single density grid build interpolated at the observations.
/// Observations whose density falls to the floor add log(1e-300) to l and
/// nothing to the score or hessian.
LikelihoodState evaluate(std::span<const double> sample, const VgParams& params,
                         const FrftGrid& grid, int order, const DensityOptions& options = {});

/// Same assembly from an existing grid (its order bounds the requested order).
LikelihoodState evaluate_on_grid(std::span<const double> sample, const DensityGrid& dg,
                                 const VgParams& params, int order);

}  // namespace vgfrft

#endif  // VGFRFT_LIKELIHOOD_HPP
