// Copyright 2026 The bevlu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bevlu/losses.hpp"
#include "bevlu/rng.hpp"
#include "oracles.hpp"

namespace bevlu
{
namespace
{

constexpr double kLog2Pi = 1.8378770664093453;

EncodedVector filled(double v) { return {v, v, v, v, v, v}; }

GaussianPrediction random_prediction(Rng & rng)
{
  GaussianPrediction p;
  for (std::size_t c = 0; c < kEncodedDim; ++c) {
    p.mean[c] = rng.uniform(-1, 1);
    p.var[c] = rng.uniform(0.05, 2.0);
  }
  return p;
}

EncodedVector random_vector(Rng & rng, double lo, double hi)
{
  EncodedVector v{};
  for (double & x : v) {
    x = rng.uniform(lo, hi);
  }
  return v;
}

double sum(const EncodedVector & v)
{
  double acc = 0.0;
  for (const double x : v) {
    acc += x;
  }
  return acc;
}

TEST(Nll, Examples)
{
  GaussianPrediction p{filled(0.3), filled(1.0)};
  const LossValue zero = nll_loss(p, filled(0.3));
  for (const double v : zero.per_variable) {
    EXPECT_DOUBLE_EQ(v, 0.0);
  }
  p.var = filled(std::exp(1.0));
  EXPECT_NEAR(nll_loss(p, filled(0.3)).per_variable[2], 0.5, 1e-15);
  const GaussianPrediction q{filled(0.0), filled(0.5)};
  const LossValue l = nll_loss(q, filled(2.0));
  EXPECT_NEAR(l.per_variable[0], 3.65343, 1e-5);
  EXPECT_EQ(l.total, sum(l.per_variable));
}

TEST(Kld, Examples)
{
  const GaussianPrediction same{filled(0.4), filled(0.2)};
  for (const double v : kld_loss(same, filled(0.4), filled(0.2)).per_variable) {
    EXPECT_NEAR(v, 0.5, 1e-15);
  }
  const GaussianPrediction q{filled(0.0), filled(0.2)};
  const LossValue l = kld_loss(q, filled(1.0), filled(0.1));
  EXPECT_NEAR(l.per_variable[3], 3.09657, 1e-5);
  EXPECT_NEAR(l.per_variable[3] - 0.5, oracle::quadrature_kl(1.0, 0.1, 0.0, 0.2), 1e-6);
  EXPECT_EQ(l.total, sum(l.per_variable));
}

TEST(Kld, MatchesIntegratedDivergence)
{
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const GaussianPrediction q = random_prediction(rng);
    const EncodedVector y = random_vector(rng, -1, 1);
    const EncodedVector s2 = random_vector(rng, 0.01, 1.0);
    const LossValue l = kld_loss(q, y, s2);
    for (std::size_t c = 0; c < kEncodedDim; ++c) {
      EXPECT_NEAR(l.per_variable[c] - 0.5, oracle::quadrature_kl(y[c], s2[c], q.mean[c], q.var[c]), 1e-6);
    }
    EXPECT_EQ(l.total, sum(l.per_variable));
  }
}

TEST(Gradients, MatchFiniteDifferences)
{
  Rng rng(42);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const GaussianPrediction q = random_prediction(rng);
    const EncodedVector y = random_vector(rng, -1, 1);
    const EncodedVector s2 = random_vector(rng, 0.01, 1.0);
    for (const LossKind kind : {LossKind::Nll, LossKind::Kld}) {
      const LossGradient g = loss_gradients(kind, q, y, s2);
      const auto loss = [&](const GaussianPrediction & p) {
        return kind == LossKind::Nll ? nll_loss(p, y).total : kld_loss(p, y, s2).total;
      };
      for (std::size_t c = 0; c < kEncodedDim; ++c) {
        const double dm = oracle::central_difference([&](double x) { GaussianPrediction p = q; p.mean[c] = x; return loss(p); }, q.mean[c], h);
        const double dv = oracle::central_difference([&](double x) { GaussianPrediction p = q; p.var[c] = x; return loss(p); }, q.var[c], h);
        EXPECT_LT(std::abs(g.d_mean[c] - dm), 1e-5 * std::max(1.0, std::abs(dm)));
        EXPECT_LT(std::abs(g.d_var[c] - dv), 1e-5 * std::max(1.0, std::abs(dv)));
      }
    }
  }
}

TEST(Gradients, KldDegeneratesToNll)
{
  // The residual gap is label_var / (2 var^2), so keep the predicted variances away from zero.
  Rng rng(43);
  for (int i = 0; i < 50; ++i) {
    GaussianPrediction q = random_prediction(rng);
    for (double & v : q.var) {
      v = std::max(v, 0.1);
    }
    const EncodedVector y = random_vector(rng, -1, 1);
    const LossGradient n = loss_gradients(LossKind::Nll, q, y);
    const LossGradient k = loss_gradients(LossKind::Kld, q, y, filled(1e-12));
    for (std::size_t c = 0; c < kEncodedDim; ++c) {
      EXPECT_LT(std::abs(n.d_mean[c] - k.d_mean[c]), 1e-10);
      EXPECT_LT(std::abs(n.d_var[c] - k.d_var[c]), 1e-10);
    }
  }
}

TEST(Gradients, VanishAtMinimum)
{
  const EncodedVector y{0.1, -0.2, 1.3, 0.5, 0.0, 1.0};
  const EncodedVector s2{0.01, 0.02, 0.03, 0.04, 0.05, 0.06};
  const LossGradient k = loss_gradients(LossKind::Kld, {y, s2}, y, s2);
  EncodedVector residual_var{};
  const EncodedVector mean = filled(0.0);
  for (std::size_t c = 0; c < kEncodedDim; ++c) {
    residual_var[c] = y[c] * y[c];
  }
  // NLL is stationary in the variance when it equals the squared residual.
  const GaussianPrediction nll_opt{mean, residual_var};
  const LossGradient n = loss_gradients(LossKind::Nll, nll_opt, y);
  for (std::size_t c = 0; c < kEncodedDim; ++c) {
    EXPECT_LT(std::abs(k.d_mean[c]), 1e-9);
    EXPECT_LT(std::abs(k.d_var[c]), 1e-9);
    if (residual_var[c] > 0.0) {
      EXPECT_LT(std::abs(n.d_var[c]), 1e-9);
    }
  }
}

TEST(Kld, MinimizerIsTheLabelDistribution)
{
  const EncodedVector y{0.4, -1.0, 1.2, 0.3, 0.6, 0.8};
  const EncodedVector s2{0.02, 0.3, 0.005, 0.1, 0.05, 0.01};
  const GaussianPrediction at{y, s2};
  const LossGradient g = loss_gradients(LossKind::Kld, at, y, s2);
  for (std::size_t c = 0; c < kEncodedDim; ++c) {
    EXPECT_LT(std::abs(g.d_mean[c]), 1e-9);
    EXPECT_LT(std::abs(g.d_var[c]), 1e-9);
    // Positive curvature in mean, variance and the mixed direction.
    const double hm = 1e-3;
    const double hv = 1e-3 * s2[c];
    const auto f = [&](double dm, double dv) {
      GaussianPrediction p = at;
      p.mean[c] += dm;
      p.var[c] += dv;
      return kld_loss(p, y, s2).per_variable[c];
    };
    const double f0 = f(0, 0);
    const double fmm = (f(hm, 0) - 2 * f0 + f(-hm, 0)) / (hm * hm);
    const double fvv = (f(0, hv) - 2 * f0 + f(0, -hv)) / (hv * hv);
    const double fmv = (f(hm, hv) - f(hm, -hv) - f(-hm, hv) + f(-hm, -hv)) / (4 * hm * hv);
    EXPECT_GT(fmm, 0.0);
    EXPECT_GT(fvv, 0.0);
    EXPECT_GT(fmm * fvv - fmv * fmv, 0.0);
    for (const auto & [dm, dv] : {std::pair{0.05, 0.0}, std::pair{0.0, 0.5 * s2[c]}, std::pair{-0.05, -0.5 * s2[c]}}) {
      EXPECT_GT(f(dm, dv), f0);
    }
  }
}

TEST(SampleLabel, ZeroVarianceIsExact)
{
  const EncodedVector y{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  EXPECT_EQ(sample_label(y, filled(0.0), 7), y);
}

TEST(SampleLabel, MomentsAndDeterminism)
{
  const EncodedVector y{0.1, -0.2, 1.3, 0.5, 0.0, 1.0};
  const EncodedVector s2{0.01, 0.04, 0.09, 0.0025, 0.2, 1.0};
  constexpr int kDraws = 100000;
  EncodedVector s{};
  EncodedVector sq{};
  for (int i = 0; i < kDraws; ++i) {
    const EncodedVector d = sample_label(y, s2, derive_seed(99, static_cast<std::uint64_t>(i)));
    for (std::size_t c = 0; c < kEncodedDim; ++c) {
      s[c] += d[c];
      sq[c] += d[c] * d[c];
    }
  }
  for (std::size_t c = 0; c < kEncodedDim; ++c) {
    const double mean = s[c] / kDraws;
    const double var = sq[c] / kDraws - mean * mean;
    EXPECT_LT(std::abs(mean - y[c]), 4.0 * std::sqrt(s2[c] / kDraws));
    EXPECT_LT(std::abs(var - s2[c]), 0.05 * s2[c]);
  }
  EXPECT_EQ(sample_label(y, s2, 5), sample_label(y, s2, 5));
  EXPECT_NE(sample_label(y, s2, 5), sample_label(y, s2, 6));
}

TEST(ExpectedNll, DegenerateLabelDistribution)
{
  Rng rng(44);
  const GaussianPrediction q = random_prediction(rng);
  const EncodedVector y = random_vector(rng, -1, 1);
  const MonteCarloEstimate e = mc_expected_nll(q, y, filled(0.0), 10, 3);
  EXPECT_EQ(e.mean, nll_loss(q, y).total);
  EXPECT_EQ(e.n, 10U);
}

TEST(ExpectedNll, MatchedDistributions)
{
  const EncodedVector y{0.1, -0.2, 1.3, 0.5, 0.0, 1.0};
  const EncodedVector s2{0.01, 0.04, 0.09, 0.0025, 0.2, 1.0};
  double expected = 0.0;
  for (const double v : s2) {
    expected += 0.5 * std::log(v) + 0.5;
  }
  EXPECT_NEAR(expected_nll_analytic({y, s2}, y, s2), expected, 1e-12);
}

TEST(ExpectedNll, MonteCarloAgreesWithAnalytic)
{
  Rng rng(45);
  const GaussianPrediction q = random_prediction(rng);
  const EncodedVector y = random_vector(rng, -1, 1);
  const EncodedVector s2 = random_vector(rng, 0.01, 1.0);
  const MonteCarloEstimate e = mc_expected_nll(q, y, s2, 1000000, 46);
  EXPECT_LT(std::abs(e.mean - expected_nll_analytic(q, y, s2)), 3.0 * e.standard_error());
  EXPECT_NEAR(e.standard_error(), e.sample_std / 1000.0, 1e-15);
}

TEST(ExpectedNll, GapToKldIsConstantInPrediction)
{
  // E_p[nll] - (kld - 1/2) is the entropy of p, independent of q.
  Rng rng(47);
  const EncodedVector y = random_vector(rng, -1, 1);
  const EncodedVector s2 = random_vector(rng, 0.01, 1.0);
  double entropy = 0.0;
  for (const double v : s2) {
    entropy += 0.5 * (1.0 + std::log(v));
  }
  for (int i = 0; i < 50; ++i) {
    const GaussianPrediction q = random_prediction(rng);
    const double gap = expected_nll_analytic(q, y, s2) - (kld_loss(q, y, s2).total - 0.5 * kEncodedDim);
    EXPECT_NEAR(gap, entropy, 1e-9);
  }
  (void)kLog2Pi;
}

}  // namespace
}  // namespace bevlu
