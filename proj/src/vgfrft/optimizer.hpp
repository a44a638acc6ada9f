// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VGFRFT_OPTIMIZER_HPP
#define VGFRFT_OPTIMIZER_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vgfrft/likelihood.hpp"

namespace vgfrft {

/// AVG: asymmetric VG (5 free parameters); SVG: delta pinned at 0;
/// CLM: Gaussian returns.
enum class ModelTag { avg, svg, clm };

std::string_view model_tag_name(ModelTag tag) noexcept;
ModelTag parse_model_tag(std::string_view name);

enum class StepKind { initial, newton, gradient };
std::string_view step_kind_name(StepKind kind) noexcept;
StepKind parse_step_kind(std::string_view name);

struct StepDamping {
  int max_halvings = 30;
  /// Largest move per iteration in any working coordinate (log units for
  /// sigma, alpha, theta).
  double max_step = 1.0;
};

struct FitConfig {
  VgParams init;
  int max_iters = 100;
  double grad_tol = 1e-4;
  StepDamping damping;
  bool symmetric = false;
  FrftGrid grid = FrftGrid::fit_default();
  DensityOptions density;

  void validate() const;
};

struct IterationRow {
  int iteration = 1;
  VgParams params;
  double loglik = 0.0;
  double grad_norm = 0.0;
  StepKind step = StepKind::initial;
  int halvings = 0;
};

struct FitReport {
  ModelTag model = ModelTag::avg;
  VgParams params;
  double loglik = 0.0;
  std::vector<IterationRow> iterations;
  bool converged = false;
  std::string stop_reason;
  std::size_t sample_size = 0;
  /// Observed Hessian of l at the final parameters (original coordinates).
  Matrix5 hessian = Matrix5::Zero();
  /// max|lambda| / min|lambda| over the free block; the (delta, sigma, theta)
  /// ridge along which the CF is invariant makes this very large.
  double hessian_condition = 0.0;
  double max_hessian_eigenvalue = 0.0;
};

/// Newton-Raphson ascent on the log-likelihood. sigma, alpha, theta move in
/// log coordinates; each step is halved until the likelihood does not drop.
FitReport fit_mle(std::span<const double> sample, const FitConfig& config);

/// Method-of-moments start. Symmetric: alpha = 3/(kurt - 3), theta sigma^2 =
/// var/alpha with theta = sigma. Asymmetric: the full cumulant system with
/// the same normalisation.
VgParams init_method_of_moments(std::span<const double> sample, bool symmetric);

struct ClmFit {
  double mu = 0.0;
  double sigma = 0.0;
  bool degenerate = false;
  double loglik = 0.0;
};

/// Gaussian MLE: mean and population (1/n) standard deviation.
ClmFit fit_clm(std::span<const double> sample);

/// Inverse-Hessian standard errors. Directions of -H with eigenvalue below
/// `null_tol` times the largest are treated as unidentified: parameters
/// loading on them get an infinite standard error and `identified = false`.
struct ParameterUncertainty {
  Vector5 standard_error = Vector5::Zero();
  std::array<bool, kNumParams> identified{};
  Matrix5 covariance = Matrix5::Zero();  // pseudo-inverse over identified directions
  int null_directions = 0;
};

ParameterUncertainty parameter_uncertainty(const Matrix5& hessian, bool symmetric,
                                           double null_tol = 1e-7);

}  // namespace vgfrft

#endif  // VGFRFT_OPTIMIZER_HPP
