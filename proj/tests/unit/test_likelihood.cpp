// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "vgfrft/errors.hpp"
#include "vgfrft/likelihood.hpp"

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

VgParams shifted(VgParams p, std::size_t j, double h) {
  auto v = p.to_array();
  v[j] += h;
  return VgParams::from_array(v);
}

double step_for(const VgParams& p, std::size_t j) { return 1e-5 * std::max(1.0, std::abs(p.to_array()[j])); }

const VgParams kSource{0.05, -0.1, 1.0, 1.6, 0.9};

std::vector<double> fixed_sample(std::size_t n) { return sample(kSource, n, 424242); }

}  // namespace

TEST(Evaluate, SingleObservationAtLaplaceMode) {
  constexpr std::size_t n = std::size_t{1} << 19;
  const FrftGrid grid = FrftGrid::make(0.3 * static_cast<double>(n), n, 20.0 / static_cast<double>(n));
  const std::vector<double> y{0.0};
  const auto s = evaluate(y, {0.0, 0.0, 1.0, 1.0, 1.0}, grid, 0);
  EXPECT_NEAR(s.value, std::log(std::numbers::sqrt2 / 2.0), 1.5e-5);
}

TEST(Evaluate, ScoreMatchesFiniteDifferencesOfValue) {
  const FrftGrid grid = gen::test_grid();
  const auto y = fixed_sample(200);
  gen::Gen g(31);
  for (int trial = 0; trial < 20; ++trial) {
    const VgParams p = g.params();
    const auto s = evaluate(y, p, grid, 1);
    for (std::size_t j = 0; j < kNumParams; ++j) {
      const double h = step_for(p, j);
      const double fd =
          (evaluate(y, shifted(p, j, h), grid, 0).value - evaluate(y, shifted(p, j, -h), grid, 0).value) / (2.0 * h);
      const double denom = std::max({std::abs(fd), 1e-3 * s.score.cwiseAbs().maxCoeff(), 1e-8});
      EXPECT_LT(std::abs(s.score(j) - fd) / denom, 1e-4) << "trial " << trial << " j=" << j;
    }
  }
}

TEST(Evaluate, HessianMatchesFiniteDifferencesOfScore) {
  const FrftGrid grid = gen::test_grid();
  const auto y = fixed_sample(200);
  gen::Gen g(32);
  for (int trial = 0; trial < 20; ++trial) {
    const VgParams p = g.params();
    const auto s = evaluate(y, p, grid, 2);
    const double scale = s.hessian.cwiseAbs().maxCoeff();
    for (std::size_t j = 0; j < kNumParams; ++j) {
      const double h = step_for(p, j);
      const Vector5 fd =
          (evaluate(y, shifted(p, j, h), grid, 1).score - evaluate(y, shifted(p, j, -h), grid, 1).score) / (2.0 * h);
      for (std::size_t k = 0; k < kNumParams; ++k) {
        const double denom = std::max(std::abs(fd(k)), 1e-3 * scale);
        EXPECT_LT(std::abs(s.hessian(k, j) - fd(k)) / denom, 1e-3) << "trial " << trial << " j=" << j << " k=" << k;
      }
    }
  }
}

TEST(Evaluate, SmallSampleDerivativesMatchFiniteDifferences) {
  const FrftGrid grid = gen::test_grid();
  gen::Gen g(33);
  const VgParams p = g.params();
  const auto y = sample(p, 50, 5);
  const auto s = evaluate(y, p, grid, 2);
  const double score_scale = s.score.cwiseAbs().maxCoeff();
  const double hess_scale = s.hessian.cwiseAbs().maxCoeff();
  for (std::size_t j = 0; j < kNumParams; ++j) {
    const double h = step_for(p, j);
    const auto up = evaluate(y, shifted(p, j, h), grid, 1);
    const auto down = evaluate(y, shifted(p, j, -h), grid, 1);
    const double fd = (up.value - down.value) / (2.0 * h);
    EXPECT_LT(std::abs(s.score(j) - fd) / std::max(std::abs(fd), 1e-3 * score_scale), 1e-4) << "j=" << j;
    const Vector5 fd_row = (up.score - down.score) / (2.0 * h);
    for (std::size_t k = 0; k < kNumParams; ++k)
      EXPECT_LT(std::abs(s.hessian(k, j) - fd_row(k)) / std::max(std::abs(fd_row(k)), 1e-3 * hess_scale), 1e-4)
          << "j=" << j << " k=" << k;
  }
}

TEST(Evaluate, HessianIsSymmetricAndValueFinite) {
  gen::Gen g(34);
  const auto y = fixed_sample(300);
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = evaluate(y, g.params(), gen::test_grid(), 2);
    EXPECT_TRUE(std::isfinite(s.value));
    EXPECT_LE((s.hessian - s.hessian.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Evaluate, PermutationInvariant) {
  auto y = fixed_sample(3000);
  const FrftGrid grid = gen::test_grid();
  const auto base = evaluate(y, kSource, grid, 2);
  gen::Gen g(35);
  for (int trial = 0; trial < 3; ++trial) {
    std::shuffle(y.begin(), y.end(), g.engine());
    const auto s = evaluate(y, kSource, grid, 2);
    EXPECT_NEAR(s.value, base.value, 1e-10 * std::abs(base.value));
    EXPECT_LT((s.score - base.score).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, base.score.norm()));
    EXPECT_LT((s.hessian - base.hessian).cwiseAbs().maxCoeff(), 1e-10 * base.hessian.norm());
  }
}

TEST(Evaluate, PartitionedSumsAgree) {
  const auto y = fixed_sample(5000);
  const DensityGrid dg = density_grid(kSource, gen::test_grid(), 2);
  const auto whole = evaluate_on_grid(y, dg, kSource, 2);
  for (std::size_t cut : {1u, 777u, 1024u, 2500u, 4999u}) {
    const std::span<const double> all(y);
    const auto left = evaluate_on_grid(all.first(cut), dg, kSource, 2);
    const auto right = evaluate_on_grid(all.subspan(cut), dg, kSource, 2);
    EXPECT_NEAR(left.value + right.value, whole.value, 1e-10 * std::abs(whole.value)) << "cut=" << cut;
    EXPECT_LT((left.score + right.score - whole.score).cwiseAbs().maxCoeff(), 1e-10 * whole.hessian.norm());
    EXPECT_LT((left.hessian + right.hessian - whole.hessian).cwiseAbs().maxCoeff(), 1e-10 * whole.hessian.norm());
  }
}

TEST(Evaluate, OrderLimitsComputedPieces) {
  const auto y = fixed_sample(100);
  const auto s0 = evaluate(y, kSource, gen::test_grid(), 0);
  const auto s1 = evaluate(y, kSource, gen::test_grid(), 1);
  EXPECT_EQ(s0.score, Vector5::Zero());
  EXPECT_NE(s1.score, Vector5::Zero());
  EXPECT_EQ(s1.hessian, Matrix5::Zero());
  EXPECT_DOUBLE_EQ(s0.value, s1.value);
}

TEST(Evaluate, ObservationOutsideSpanIsSpanError) {
  std::vector<double> y = fixed_sample(10);
  y[4] = 30.0;
  try {
    evaluate(y, kSource, gen::test_grid(), 0);
    FAIL() << "expected span error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::span);
    EXPECT_NE(std::string(e.what()).find("observation 4"), std::string::npos) << e.what();
  }
}

TEST(Evaluate, NonFiniteObservationIsNumericError) {
  std::vector<double> y = fixed_sample(10);
  y[7] = std::nan("");
  try {
    evaluate(y, kSource, gen::test_grid(), 0);
    FAIL() << "expected numeric error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::numeric);
    EXPECT_NE(std::string(e.what()).find("observation 7"), std::string::npos) << e.what();
  }
}

TEST(Evaluate, RejectsEmptySampleAndMissingDerivatives) {
  const std::vector<double> none;
  EXPECT_EQ(code_of([&] { evaluate(none, kSource, gen::test_grid(), 0); }), ErrorCode::argument);
  const auto y = fixed_sample(10);
  const DensityGrid dg = density_grid(kSource, gen::test_grid(), 1);
  EXPECT_EQ(code_of([&] { evaluate_on_grid(y, dg, kSource, 2); }), ErrorCode::argument);
}

TEST(Evaluate, FarTailObservationStaysFinite) {
  // The law is very concentrated, so the density at y = 15 is at rounding
  // level on the grid and may interpolate to a non-positive value.
  const std::vector<double> y{0.0, 15.0};
  const auto s = evaluate(y, {0.0, 0.0, 0.2, 4.0, 0.1}, gen::test_grid(), 1);
  EXPECT_TRUE(std::isfinite(s.value));
  EXPECT_LT(s.value, -20.0);
  EXPECT_TRUE(s.score.allFinite());
}
