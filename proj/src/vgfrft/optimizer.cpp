// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#include "vgfrft/optimizer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "vgfrft/errors.hpp"

namespace vgfrft {

namespace {

bool is_log_coordinate(std::size_t j) { return j >= 2; }

std::vector<std::size_t> free_indices(bool symmetric) {
  if (symmetric) return {0, 2, 3, 4};
  return {0, 1, 2, 3, 4};
}

double free_norm(const Vector5& g, const std::vector<std::size_t>& free) {
  double s = 0.0;
  for (std::size_t j : free) s += g(j) * g(j);
  return std::sqrt(s);
}

// Working coordinates z: (mu, delta, log sigma, log alpha, log theta).
Vector5 to_working(const VgParams& p) {
  return {p.mu, p.delta, std::log(p.sigma), std::log(p.alpha), std::log(p.theta)};
}

VgParams from_working(const Vector5& z) {
  return {z(0), z(1), std::exp(z(2)), std::exp(z(3)), std::exp(z(4))};
}

struct WorkingDerivatives {
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

// Chain rule for v = exp(z) on the log coordinates:
//   dl/dz = v dl/dv,  d2l/dz2 = v_j v_k d2l/dv_j dv_k + [j == k] v_j dl/dv_j.
WorkingDerivatives working_derivatives(const LikelihoodState& s,
                                       const std::vector<std::size_t>& free) {
  const auto v = s.params.to_array();
  Vector5 jac;
  for (std::size_t j = 0; j < kNumParams; ++j) jac(j) = is_log_coordinate(j) ? v[j] : 1.0;
  const auto m = static_cast<Eigen::Index>(free.size());
  WorkingDerivatives w{Eigen::VectorXd(m), Eigen::MatrixXd(m, m)};
  for (Eigen::Index a = 0; a < m; ++a) {
    const std::size_t j = free[a];
    w.gradient(a) = jac(j) * s.score(j);
    for (Eigen::Index b = 0; b < m; ++b) {
      const std::size_t k = free[b];
      w.hessian(a, b) = jac(j) * jac(k) * s.hessian(j, k);
    }
    if (is_log_coordinate(j)) w.hessian(a, a) += jac(j) * s.score(j);
  }
  return w;
}

struct Direction {
  Eigen::VectorXd step;
  StepKind kind;
};

// Tangent of the curve (delta/c, sigma/sqrt(c), c theta) through the current
// point, in working coordinates restricted to the free block. The CF, hence
// the likelihood, is constant along it.
Eigen::VectorXd ridge_tangent(const VgParams& p, const std::vector<std::size_t>& free) {
  Vector5 u(0.0, -p.delta, -0.5, 0.0, 1.0);
  Eigen::VectorXd out(static_cast<Eigen::Index>(free.size()));
  for (std::size_t a = 0; a < free.size(); ++a) out(static_cast<Eigen::Index>(a)) = u(free[a]);
  return out.normalized();
}

// Newton direction on the complement of the ridge when the Hessian is
// negative there; otherwise scaled gradient ascent.
Direction ascent_direction(const WorkingDerivatives& w, const Eigen::VectorXd& ridge) {
  const auto m = w.gradient.size();
  const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(m, m) - ridge * ridge.transpose();
  const Eigen::VectorXd g = proj * w.gradient;
  const Eigen::MatrixXd h = proj * w.hessian * proj;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double scale = lambda.cwiseAbs().maxCoeff();
  Direction d{Eigen::VectorXd::Zero(m), StepKind::newton};
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    d.step = g;
    d.kind = StepKind::gradient;
    return d;
  }
  const double null_tol = 1e-10 * scale;
  bool indefinite = false;
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (lambda(i) > null_tol) indefinite = true;
  if (indefinite) {
    d.step = g / scale;
    d.kind = StepKind::gradient;
    return d;
  }
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i)) <= null_tol) continue;
    const Eigen::VectorXd v = eig.eigenvectors().col(i);
    d.step -= (v.dot(g) / lambda(i)) * v;
  }
  return d;
}

void fill_final_hessian(FitReport& report, const LikelihoodState& s,
                        const std::vector<std::size_t>& free) {
  report.hessian = s.hessian;
  const auto m = static_cast<Eigen::Index>(free.size());
  Eigen::MatrixXd h(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) h(a, b) = s.hessian(free[a], free[b]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::VectorXd abs = eig.eigenvalues().cwiseAbs();
  report.max_hessian_eigenvalue = eig.eigenvalues().maxCoeff();
  report.hessian_condition = abs.minCoeff() > 0.0 ? abs.maxCoeff() / abs.minCoeff()
                                                  : std::numeric_limits<double>::infinity();
}

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  // population
  double third = 0.0;     // central
  double fourth = 0.0;
};

SampleMoments sample_moments(std::span<const double> x) {
  SampleMoments m;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  if (*lo == *hi) {
    m.mean = *lo;
    return m;
  }
  const double n = static_cast<double>(x.size());
  for (double v : x) m.mean += v;
  m.mean /= n;
  for (double v : x) {
    const double d = v - m.mean;
    const double d2 = d * d;
    m.variance += d2;
    m.third += d2 * d;
    m.fourth += d2 * d2;
  }
  m.variance /= n;
  m.third /= n;
  m.fourth /= n;
  return m;
}

// Root of p (3 v - alpha p^2) = k3 on the branch |p| < sqrt(v/alpha), where
// the left side increases monotonically from -2v sqrt(w) to 2v sqrt(w).
double solve_skew_drift(double v, double alpha, double k3) {
  const double edge = std::sqrt(v / alpha);
  double lo = -edge, hi = edge;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid * (3.0 * v - alpha * mid * mid) < k3)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double kurtosis_residual(double v, double alpha, double k3, double k4) {
  const double p = solve_skew_drift(v, alpha, k3);
  const double w = v / alpha;
  return alpha * (3.0 * w * w + 6.0 * w * p * p - 3.0 * p * p * p * p) - k4;
}

VgParams normalised(double mean, double alpha, double drift, double quad) {
  // theta sigma^2 = 2 quad with theta = sigma; delta theta = drift.
  VgParams p;
  p.alpha = alpha;
  p.sigma = std::cbrt(2.0 * quad);
  p.theta = p.sigma;
  p.delta = drift / p.theta;
  p.mu = mean - alpha * drift;
  return p;
}

}  // namespace

std::string_view model_tag_name(ModelTag tag) noexcept {
  switch (tag) {
    case ModelTag::avg: return "AVG";
    case ModelTag::svg: return "SVG";
    case ModelTag::clm: return "CLM";
  }
  return "AVG";
}

ModelTag parse_model_tag(std::string_view name) {
  std::string s(name);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "avg") return ModelTag::avg;
  if (s == "svg") return ModelTag::svg;
  if (s == "clm") return ModelTag::clm;
  raise(ErrorCode::argument, "unknown model tag '" + std::string(name) + "' (avg, svg, clm)");
}

std::string_view step_kind_name(StepKind kind) noexcept {
  switch (kind) {
    case StepKind::initial: return "initial";
    case StepKind::newton: return "newton";
    case StepKind::gradient: return "gradient";
  }
  return "initial";
}

StepKind parse_step_kind(std::string_view name) {
  if (name == "initial") return StepKind::initial;
  if (name == "newton") return StepKind::newton;
  if (name == "gradient") return StepKind::gradient;
  raise(ErrorCode::parse, "unknown step kind '" + std::string(name) + "'");
}

void FitConfig::validate() const {
  require(max_iters >= 1, ErrorCode::argument, "max_iters must be at least 1");
  require(grad_tol > 0.0, ErrorCode::argument, "grad_tol must be positive");
  require(damping.max_halvings >= 0 && damping.max_step > 0.0, ErrorCode::argument,
          "invalid step damping");
  init.validate();
  grid.validate();
}

FitReport fit_mle(std::span<const double> sample, const FitConfig& config) {
  config.validate();
  require(!sample.empty(), ErrorCode::argument, "cannot fit an empty sample");
  const auto free = free_indices(config.symmetric);

  VgParams start = config.init;
  if (config.symmetric) start.delta = 0.0;

  FitReport report;
  report.model = config.symmetric ? ModelTag::svg : ModelTag::avg;
  report.sample_size = sample.size();

  LikelihoodState state = evaluate(sample, start, config.grid, 2, config.density);
  report.iterations.push_back({1, start, state.value, free_norm(state.score, free),
                               StepKind::initial, 0});

  for (int iter = 0;; ++iter) {
    const double grad_norm = report.iterations.back().grad_norm;
    if (grad_norm < config.grad_tol) {
      report.converged = true;
      report.stop_reason = "score norm below tolerance";
      break;
    }
    if (iter >= config.max_iters) {
      report.stop_reason = "iteration limit reached";
      break;
    }

    const WorkingDerivatives w = working_derivatives(state, free);
    Direction dir = ascent_direction(w, ridge_tangent(state.params, free));
    const double longest = dir.step.cwiseAbs().maxCoeff();
    if (longest > config.damping.max_step) dir.step *= config.damping.max_step / longest;

    const Vector5 z0 = to_working(state.params);
    bool accepted = false;
    double factor = 1.0;
    int halvings = 0;
    VgParams trial;
    for (; halvings <= config.damping.max_halvings; ++halvings, factor *= 0.5) {
      Vector5 z = z0;
      for (std::size_t a = 0; a < free.size(); ++a)
        z(free[a]) += factor * dir.step(static_cast<Eigen::Index>(a));
      trial = from_working(z);
      if (config.symmetric) trial.delta = 0.0;
      try {
        const LikelihoodState probe = evaluate(sample, trial, config.grid, 0, config.density);
        if (probe.value >= state.value) {
          accepted = true;
          break;
        }
      } catch (const Error& e) {
        // Trial parameters the grid cannot represent count as a failed step.
        if (e.code() != ErrorCode::grid_support && e.code() != ErrorCode::span &&
            e.code() != ErrorCode::numeric && e.code() != ErrorCode::argument)
          throw;
      }
    }
    if (!accepted) {
      report.stop_reason = "line search found no non-decreasing step";
      break;
    }
    state = evaluate(sample, trial, config.grid, 2, config.density);
    report.iterations.push_back({static_cast<int>(report.iterations.size()) + 1, trial,
                                 state.value, free_norm(state.score, free), dir.kind, halvings});
  }

  report.params = state.params;
  report.loglik = state.value;
  fill_final_hessian(report, state, free);
  return report;
}

VgParams init_method_of_moments(std::span<const double> sample, bool symmetric) {
  require(sample.size() >= 4, ErrorCode::moments, "method of moments needs at least 4 observations");
  for (double v : sample)
    require(std::isfinite(v), ErrorCode::moments, "method of moments needs finite observations");
  const SampleMoments m = sample_moments(sample);
  require(m.variance > 0.0, ErrorCode::moments, "sample variance is zero");
  const double kurt = m.fourth / (m.variance * m.variance);
  if (!(kurt > 3.0)) {
    std::ostringstream msg;
    msg << "sample kurtosis " << kurt
        << " <= 3 leaves alpha undefined; start the MLE from the default parameters instead";
    raise(ErrorCode::moments, msg.str());
  }
  const double v = m.variance;
  const double k4 = m.fourth - 3.0 * v * v;

  if (symmetric || m.third == 0.0) {
    const double alpha = 3.0 / (kurt - 3.0);
    return normalised(m.mean, alpha, 0.0, 0.5 * v / alpha);
  }

  const double k3 = m.third;
  // The skew equation has a root with theta sigma^2 > 0 only for alpha below this.
  const double alpha_max = 4.0 * v * v * v / (k3 * k3);
  double lo = alpha_max * 1e-12;
  double hi = alpha_max * (1.0 - 1e-12);
  if (kurtosis_residual(v, hi, k3, k4) > 0.0) {
    // Scan downwards for a sign change; the residual is positive near zero.
    bool found = false;
    for (double a = hi; a > lo; a *= 0.9) {
      if (kurtosis_residual(v, a, k3, k4) <= 0.0) {
        hi = a;
        found = true;
        break;
      }
    }
    if (!found) {
      raise(ErrorCode::moments,
            "sample skewness and kurtosis admit no asymmetric VG solution; use the symmetric "
            "initializer or the default start");
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (kurtosis_residual(v, mid, k3, k4) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double alpha = std::sqrt(lo * hi);
  const double drift = solve_skew_drift(v, alpha, k3);
  const double quad = 0.5 * (v / alpha - drift * drift);
  return normalised(m.mean, alpha, drift, quad);
}

ClmFit fit_clm(std::span<const double> sample) {
  require(sample.size() >= 2, ErrorCode::argument, "CLM fit needs at least 2 observations");
  const SampleMoments m = sample_moments(sample);
  ClmFit fit;
  fit.mu = m.mean;
  fit.sigma = std::sqrt(m.variance);
  fit.degenerate = !(fit.sigma > 0.0);
  if (fit.degenerate) {
    fit.loglik = std::numeric_limits<double>::infinity();
  } else {
    const double n = static_cast<double>(sample.size());
    fit.loglik = -0.5 * n * (std::log(2.0 * std::numbers::pi * m.variance) + 1.0);
  }
  return fit;
}

ParameterUncertainty parameter_uncertainty(const Matrix5& hessian, bool symmetric,
                                           double null_tol) {
  const auto free = free_indices(symmetric);
  const auto m = static_cast<Eigen::Index>(free.size());
  Eigen::MatrixXd info(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) info(a, b) = -hessian(free[a], free[b]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(info);
  const double scale = eig.eigenvalues().cwiseAbs().maxCoeff();

  ParameterUncertainty out;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd null_loading = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::VectorXd v = eig.eigenvectors().col(i);
    const double lambda = eig.eigenvalues()(i);
    if (lambda <= null_tol * scale) {
      ++out.null_directions;
      null_loading += v.cwiseAbs2();
    } else {
      cov += (v * v.transpose()) / lambda;
    }
  }
  out.identified.fill(true);
  for (Eigen::Index a = 0; a < m; ++a) {
    const std::size_t j = free[a];
    for (Eigen::Index b = 0; b < m; ++b) out.covariance(j, free[b]) = cov(a, b);
    out.identified[j] = null_loading(a) < 1e-6;
    out.standard_error(j) = out.identified[j] ? std::sqrt(cov(a, a))
                                              : std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace vgfrft
