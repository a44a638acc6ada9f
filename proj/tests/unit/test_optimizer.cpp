// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "vgfrft/errors.hpp"
#include "vgfrft/optimizer.hpp"

using namespace vgfrft;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

const VgParams kDefaultInit{0.0, 0.0, 1.0, 1.0, 1.0};

FitConfig config_from(const VgParams& init, bool symmetric = false) {
  FitConfig c;
  c.init = init;
  c.symmetric = symmetric;
  c.grid = gen::test_grid();
  return c;
}

void expect_monotone(const FitReport& r) {
  ASSERT_FALSE(r.iterations.empty());
  for (std::size_t i = 1; i < r.iterations.size(); ++i)
    EXPECT_GE(r.iterations[i].loglik, r.iterations[i - 1].loglik) << "iteration " << i + 1;
  EXPECT_EQ(r.iterations.front().step, StepKind::initial);
  EXPECT_DOUBLE_EQ(r.iterations.back().loglik, r.loglik);
}

double model_sd(const VgParams& p) { return std::sqrt(moments(p).variance); }

}  // namespace

// ----------------------------------------------------------------- fit_mle

class FitFixture : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    data_ = new std::vector<double>(sample({0.05, -0.15, 1.0, 1.4, 0.9}, 3000, 777));
    report_ = new FitReport(fit_mle(*data_, config_from(kDefaultInit)));
  }
  static void TearDownTestSuite() {
    delete report_;
    delete data_;
  }
  static std::vector<double>* data_;
  static FitReport* report_;
};

std::vector<double>* FitFixture::data_ = nullptr;
FitReport* FitFixture::report_ = nullptr;

TEST_F(FitFixture, ConvergesWithMonotoneTrace) {
  const FitReport& r = *report_;
  EXPECT_TRUE(r.converged) << r.stop_reason;
  EXPECT_EQ(r.model, ModelTag::avg);
  EXPECT_EQ(r.sample_size, data_->size());
  EXPECT_LT(r.iterations.back().grad_norm, 1e-4);
  expect_monotone(r);
  for (std::size_t i = 0; i < r.iterations.size(); ++i) EXPECT_EQ(r.iterations[i].iteration, static_cast<int>(i) + 1);
}

TEST_F(FitFixture, HessianIsNegativeSemidefiniteAtMaximum) {
  Eigen::SelfAdjointEigenSolver<Matrix5> eig(report_->hessian);
  EXPECT_LE(eig.eigenvalues().maxCoeff(), 1e-6) << eig.eigenvalues().transpose();
  EXPECT_LE(report_->max_hessian_eigenvalue, 1e-6);
}

TEST_F(FitFixture, ReportedLoglikMatchesEvaluation) {
  const auto s = evaluate(*data_, report_->params, gen::test_grid(), 0);
  EXPECT_DOUBLE_EQ(s.value, report_->loglik);
}

TEST_F(FitFixture, RidgeShowsAsLargeCondition) {
  // delta, sigma, theta enter the CF only through delta*theta and
  // theta*sigma^2, so one direction of the Hessian is flat.
  EXPECT_GT(report_->hessian_condition, 1e6);
  const auto u = parameter_uncertainty(report_->hessian, false);
  EXPECT_EQ(u.null_directions, 1);
  EXPECT_TRUE(u.identified[0]);
  EXPECT_TRUE(u.identified[3]);
  EXPECT_FALSE(u.identified[2]);
  EXPECT_TRUE(std::isinf(u.standard_error(2)));
}

TEST_F(FitFixture, LocationShiftMovesOnlyMu) {
  // Where the fit stops along the (delta, sigma, theta) ridge depends on the
  // path, so the comparison uses the coordinates the likelihood identifies.
  const double c = 0.7;
  std::vector<double> moved(*data_);
  for (auto& v : moved) v += c;
  VgParams init = kDefaultInit;
  init.mu += c;
  const FitReport r = fit_mle(moved, config_from(init));
  ASSERT_TRUE(r.converged);
  const VgParams& a = report_->params;
  const VgParams& b = r.params;
  EXPECT_NEAR(b.mu, a.mu + c, 1e-6);
  EXPECT_NEAR(b.alpha, a.alpha, 1e-6);
  EXPECT_NEAR(b.delta * b.theta, a.delta * a.theta, 1e-6);
  EXPECT_NEAR(b.theta * b.sigma * b.sigma, a.theta * a.sigma * a.sigma, 1e-6);
  EXPECT_NEAR(r.loglik, report_->loglik, 1e-6);
}

TEST_F(FitFixture, ScalingScalesModelStandardDeviation) {
  const double c = 1.8;
  std::vector<double> scaled(*data_);
  for (auto& v : scaled) v *= c;
  const FitReport r = fit_mle(scaled, config_from(kDefaultInit));
  ASSERT_TRUE(r.converged) << r.stop_reason;
  EXPECT_NEAR(model_sd(r.params) / model_sd(report_->params), c, 1e-4 * c);
}

TEST(FitMle, SymmetricFlagPinsDelta) {
  const auto y = sample({0.1, 0.0, 0.9, 1.8, 1.1}, 3000, 99);
  VgParams init = kDefaultInit;
  init.delta = 0.4;  // ignored under the symmetric flag
  const FitReport r = fit_mle(y, config_from(init, true));
  EXPECT_TRUE(r.converged) << r.stop_reason;
  EXPECT_EQ(r.model, ModelTag::svg);
  for (const auto& row : r.iterations) EXPECT_EQ(row.params.delta, 0.0);
  expect_monotone(r);
  // theta*sigma^2 and alpha are identified without the ridge.
  EXPECT_NEAR(r.params.alpha, 1.8, 0.4);
  EXPECT_NEAR(r.params.theta * r.params.sigma * r.params.sigma, 1.1 * 0.81, 0.15);
  EXPECT_NEAR(r.params.mu, 0.1, 0.06);
}

TEST(FitMle, IterationLimitReportsNotConverged) {
  const auto y = sample({0.0, 0.2, 1.0, 1.2, 1.0}, 1000, 4);
  FitConfig c = config_from(kDefaultInit);
  c.max_iters = 1;
  const FitReport r = fit_mle(y, c);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations.size(), 2u);
  EXPECT_NE(r.stop_reason.find("iteration limit"), std::string::npos);
}

TEST(FitMle, StartingAtOptimumStopsImmediately) {
  const auto y = sample({0.0, 0.0, 1.0, 2.0, 1.0}, 1000, 6);
  const FitReport first = fit_mle(y, config_from(kDefaultInit, true));
  ASSERT_TRUE(first.converged);
  FitConfig c = config_from(first.params, true);
  const FitReport again = fit_mle(y, c);
  EXPECT_TRUE(again.converged);
  EXPECT_EQ(again.iterations.size(), 1u);
}

TEST(FitMle, RejectsBadConfiguration) {
  const std::vector<double> y{0.1, -0.2, 0.3, 0.0, 0.5};
  FitConfig c = config_from(kDefaultInit);
  c.max_iters = 0;
  EXPECT_EQ(code_of([&] { fit_mle(y, c); }), ErrorCode::argument);
  c = config_from(kDefaultInit);
  c.grad_tol = 0.0;
  EXPECT_EQ(code_of([&] { fit_mle(y, c); }), ErrorCode::argument);
  c = config_from({0.0, 0.0, -1.0, 1.0, 1.0});
  EXPECT_EQ(code_of([&] { fit_mle(y, c); }), ErrorCode::argument);
  const std::vector<double> none;
  EXPECT_EQ(code_of([&] { fit_mle(none, config_from(kDefaultInit)); }), ErrorCode::argument);
}

TEST(ModelTags, RoundTrip) {
  for (ModelTag t : {ModelTag::avg, ModelTag::svg, ModelTag::clm}) EXPECT_EQ(parse_model_tag(model_tag_name(t)), t);
  EXPECT_EQ(parse_model_tag("Svg"), ModelTag::svg);
  EXPECT_EQ(code_of([] { parse_model_tag("nig"); }), ErrorCode::argument);
  for (StepKind k : {StepKind::initial, StepKind::newton, StepKind::gradient})
    EXPECT_EQ(parse_step_kind(step_kind_name(k)), k);
}

// ------------------------------------------------------ method of moments

TEST(MethodOfMoments, ExactPopulationMomentsGiveUnitShape) {
  // Mass 1/12 at -sqrt(6) and +sqrt(6), 10/12 at 0: mean 0, variance 1,
  // kurtosis 6.
  std::vector<double> y(12, 0.0);
  y[0] = -std::sqrt(6.0);
  y[11] = std::sqrt(6.0);
  const VgParams p = init_method_of_moments(y, true);
  EXPECT_NEAR(p.alpha, 1.0, 1e-12);
  EXPECT_NEAR(p.mu, 0.0, 1e-15);
  EXPECT_EQ(p.delta, 0.0);
  EXPECT_NEAR(p.theta * p.sigma * p.sigma, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(p.theta, p.sigma);
}

TEST(MethodOfMoments, MillionDrawsWithinFivePercent) {
  const auto y = sample({0.0, 0.0, 1.0, 1.0, 1.0}, 1'000'000, 2024);
  for (bool symmetric : {true, false}) {
    const VgParams p = init_method_of_moments(y, symmetric);
    EXPECT_NEAR(p.mu, 0.0, 0.05);
    EXPECT_NEAR(p.delta, 0.0, 0.05);
    EXPECT_NEAR(p.sigma, 1.0, 0.05);
    EXPECT_NEAR(p.alpha, 1.0, 0.05);
    EXPECT_NEAR(p.theta, 1.0, 0.05);
  }
}

TEST(MethodOfMoments, AsymmetricSystemInvertsMoments) {
  // Population moments of a skewed law reproduce it up to the
  // theta = sigma normalisation.
  const VgParams truth{0.1, -0.3, 0.9, 1.7, 0.9};
  const auto y = sample(truth, 2'000'000, 31);
  const VgParams p = init_method_of_moments(y, false);
  const Moments want = moments(truth);
  const Moments got = moments(p);
  EXPECT_NEAR(got.mean, want.mean, 0.01);
  EXPECT_NEAR(got.variance, want.variance, 0.02 * want.variance);
  EXPECT_NEAR(got.skewness, want.skewness, 0.05);
  EXPECT_NEAR(got.kurtosis, want.kurtosis, 0.15);
  EXPECT_NEAR(p.alpha, truth.alpha, 0.1 * truth.alpha);
  EXPECT_NEAR(p.delta * p.theta, truth.delta * truth.theta, 0.03);
  EXPECT_DOUBLE_EQ(p.theta, p.sigma);
}

TEST(MethodOfMoments, SampleMomentsAreMatchedExactly) {
  const auto y = sample({0.0, 0.25, 1.0, 1.3, 0.8}, 5000, 8);
  const VgParams p = init_method_of_moments(y, false);
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : y) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double n = static_cast<double>(y.size());
  m2 /= n;
  m3 /= n;
  m4 /= n;
  const Moments m = moments(p);
  EXPECT_NEAR(m.mean, mean, 1e-12);
  EXPECT_NEAR(m.variance, m2, 1e-10);
  EXPECT_NEAR(m.skewness, m3 / std::pow(m2, 1.5), 1e-8);
  EXPECT_NEAR(m.kurtosis, m4 / (m2 * m2), 1e-8);
}

TEST(MethodOfMoments, PlatykurticSampleIsMomentsError) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> y(10000);
  for (auto& v : y) v = u(rng);
  try {
    init_method_of_moments(y, true);
    FAIL() << "expected moments error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::moments);
    EXPECT_NE(std::string(e.what()).find("default"), std::string::npos);
  }
}

TEST(MethodOfMoments, RejectsTinyOrConstantSamples) {
  EXPECT_EQ(code_of([] { init_method_of_moments(std::vector<double>{1, 2, 3}, true); }), ErrorCode::moments);
  EXPECT_EQ(code_of([] { init_method_of_moments(std::vector<double>(10, 0.5), true); }), ErrorCode::moments);
}

// -------------------------------------------------------------------- CLM

TEST(Clm, ConstantSampleIsDegenerate) {
  const ClmFit f = fit_clm(std::vector<double>(50, 0.3));
  EXPECT_TRUE(f.degenerate);
  EXPECT_EQ(f.sigma, 0.0);
  EXPECT_DOUBLE_EQ(f.mu, 0.3);
}

TEST(Clm, PopulationStandardDeviation) {
  const ClmFit f = fit_clm(std::vector<double>{1.0, 3.0});
  EXPECT_DOUBLE_EQ(f.mu, 2.0);
  EXPECT_DOUBLE_EQ(f.sigma, 1.0);
  EXPECT_FALSE(f.degenerate);
  EXPECT_NEAR(f.loglik, -(std::log(2.0 * std::numbers::pi) + 1.0), 1e-14);
}

TEST(Clm, RecoversNormalParameters) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> z(0.3, 1.7);
  const std::size_t n = 1'000'000;
  std::vector<double> y(n);
  for (auto& v : y) v = z(rng);
  const ClmFit f = fit_clm(y);
  EXPECT_LT(std::abs(f.mu - 0.3), 3.0 * 1.7 / std::sqrt(static_cast<double>(n)));
  EXPECT_LT(std::abs(f.sigma - 1.7), 3.0 * 1.7 / std::sqrt(2.0 * static_cast<double>(n)));
}

TEST(Clm, NeedsTwoObservations) {
  EXPECT_EQ(code_of([] { fit_clm(std::vector<double>{1.0}); }), ErrorCode::argument);
}

// ---------------------------------------------------------- uncertainty

TEST(Uncertainty, DiagonalInformationInverts) {
  Matrix5 h = Matrix5::Zero();
  h.diagonal() << -4.0, -16.0, -1.0, -0.25, -100.0;
  const auto u = parameter_uncertainty(h, false);
  EXPECT_EQ(u.null_directions, 0);
  const Vector5 want(0.5, 0.25, 1.0, 2.0, 0.1);
  EXPECT_LT((u.standard_error - want).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Uncertainty, SymmetricSkipsDelta) {
  Matrix5 h = Matrix5::Zero();
  h.diagonal() << -4.0, 0.0, -1.0, -1.0, -1.0;
  const auto u = parameter_uncertainty(h, true);
  EXPECT_EQ(u.null_directions, 0);
  EXPECT_EQ(u.standard_error(1), 0.0);
  EXPECT_DOUBLE_EQ(u.standard_error(0), 0.5);
}
