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

#include <cmath>
#include <numbers>

#include "bevlu/encoding.hpp"
#include "bevlu/rng.hpp"

namespace bevlu
{
namespace
{

using std::numbers::pi;

TEST(Encode, Examples)
{
  const Vec2 ref{1.0, -2.0};
  const BoxEncoding unit = encode_box(BoxBEV::make(3, 1, 1.0, std::exp(1.0), 0.0), ref);
  EXPECT_DOUBLE_EQ(unit.dx, 2.0);
  EXPECT_DOUBLE_EQ(unit.dy, 3.0);
  EXPECT_DOUBLE_EQ(unit.log_l, 0.0);
  EXPECT_DOUBLE_EQ(unit.log_w, 1.0);
  EXPECT_DOUBLE_EQ(unit.sin_t, 0.0);
  EXPECT_DOUBLE_EQ(unit.cos_t, 1.0);
  EXPECT_NEAR(encode_box(BoxBEV::make(0, 0, std::exp(1.0), 1, 0), {}).log_l, 1.0, 1e-15);
}

TEST(Decode, RoundTrip)
{
  Rng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const BoxBEV b = BoxBEV::make(rng.uniform(-40, 70), rng.uniform(-40, 40), rng.uniform(0.2, 8), rng.uniform(0.2, 4), rng.uniform(-pi, pi));
    const Vec2 ref{rng.uniform(-40, 70), rng.uniform(-40, 40)};
    const BoxEncoding e = encode_box(b, ref);
    EXPECT_NEAR(e.sin_t * e.sin_t + e.cos_t * e.cos_t, 1.0, 1e-9);
    const BoxBEV d = decode_box(e, ref);
    EXPECT_NEAR(d.cx, b.cx, 1e-9);
    EXPECT_NEAR(d.cy, b.cy, 1e-9);
    EXPECT_NEAR(d.l, b.l, 1e-9);
    EXPECT_NEAR(d.w, b.w, 1e-9);
    EXPECT_NEAR(d.theta, b.theta, 1e-9);
  }
}

TEST(Decode, OrientationScaleInvariant)
{
  BoxEncoding e;
  e.sin_t = 0.6;
  e.cos_t = 0.8;
  const double theta = decode_box(e, {}).theta;
  e.sin_t = 1.2;
  e.cos_t = 1.6;
  EXPECT_DOUBLE_EQ(decode_box(e, {}).theta, theta);
  EXPECT_NEAR(theta, std::atan2(0.6, 0.8), 1e-15);
}

TEST(Decode, DegenerateOrientation)
{
  BoxEncoding e;
  e.sin_t = 0.0;
  e.cos_t = 0.0;
  EXPECT_THROW(decode_box(e, {}), DegenerateOrientation);
}

TEST(Propagate, Examples)
{
  const BoxBEV b = BoxBEV::make(0, 0, 4, 2, 0);
  const EncodedVariance v = propagate_variance({0.01, 0.02, 0.04, 0.01, 0.01}, b);
  EXPECT_DOUBLE_EQ(v[0], 0.01);
  EXPECT_DOUBLE_EQ(v[1], 0.02);
  EXPECT_NEAR(v[2], 0.0025, 1e-15);
  EXPECT_NEAR(v[3], 0.0025, 1e-15);
  EXPECT_NEAR(v[4], 0.01, 1e-15);
  EXPECT_EQ(propagate_variance_unclamped({0.01, 0.02, 0.04, 0.01, 0.01}, b)[5], 0.0);
  EXPECT_DOUBLE_EQ(v[5], kVarMin);
}

TEST(Propagate, ClampedToBounds)
{
  const BoxBEV b = BoxBEV::make(0, 0, 0.5, 0.5, 1.0);
  for (const double v : propagate_variance({4.0, 1e-9, 2.0, 1e-9, 3.0}, b)) {
    EXPECT_GE(v, kVarMin);
    EXPECT_LE(v, kVarMax);
  }
}

TEST(Propagate, LinearBeforeClamp)
{
  Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    const BoxBEV b = BoxBEV::make(rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(1, 6), rng.uniform(1, 3), rng.uniform(-pi, pi));
    LabelVector var{};
    LabelVector twice{};
    for (std::size_t a = 0; a < kLabelDim; ++a) {
      var[a] = rng.uniform(1e-4, 1.0);
      twice[a] = 2.0 * var[a];
    }
    const EncodedVector one = propagate_variance_unclamped(var, b);
    const EncodedVector two = propagate_variance_unclamped(twice, b);
    for (std::size_t c = 0; c < kEncodedDim; ++c) {
      EXPECT_NEAR(two[c], 2.0 * one[c], 1e-15 * std::max(1.0, one[c]));
    }
    EXPECT_EQ(one[0], var[0]);
    EXPECT_EQ(one[1], var[1]);
  }
}

TEST(Propagate, MatchesMonteCarlo)
{
  // Stds well inside the linear regime; the heading avoids the stationary points of sin and cos.
  const BoxBEV b = BoxBEV::make(12, -4, 4.0, 1.8, 0.7);
  const LabelVector sd{0.3, 0.2, 0.05 * b.l, 0.05 * b.w, 0.05};
  LabelVector var{};
  for (std::size_t a = 0; a < kLabelDim; ++a) {
    var[a] = sd[a] * sd[a];
  }
  const EncodedVector analytic = propagate_variance_unclamped(var, b);
  Rng rng(33);
  constexpr int kSamples = 1000000;
  std::array<double, kEncodedDim> sum{};
  std::array<double, kEncodedDim> sq{};
  for (int i = 0; i < kSamples; ++i) {
    const BoxBEV s = BoxBEV::make(
      b.cx + sd[0] * rng.normal(), b.cy + sd[1] * rng.normal(), b.l + sd[2] * rng.normal(),
      b.w + sd[3] * rng.normal(), b.theta + sd[4] * rng.normal());
    const EncodedVector e = encode_box(s, {}).as_vector();
    for (std::size_t c = 0; c < kEncodedDim; ++c) {
      sum[c] += e[c];
      sq[c] += e[c] * e[c];
    }
  }
  for (std::size_t c = 0; c < kEncodedDim; ++c) {
    const double mean = sum[c] / kSamples;
    const double mc = sq[c] / kSamples - mean * mean;
    EXPECT_LT(std::abs(analytic[c] - mc) / mc, 0.05) << "component " << c;
  }
}

}  // namespace
}  // namespace bevlu
