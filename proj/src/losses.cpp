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

#include "bevlu/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bevlu/rng.hpp"

namespace bevlu
{

namespace
{

double floored(double v) { return std::max(v, kPredVarFloor); }

LossValue summed(const EncodedVector & per_variable)
{
  LossValue out{0.0, per_variable};
  for (const double term : per_variable) {
    out.total += term;
  }
  return out;
}

}  // namespace

LossValue nll_loss(const GaussianPrediction & pred, const EncodedVector & target)
{
  EncodedVector terms{};
  for (std::size_t v = 0; v < kEncodedDim; ++v) {
    const double var = floored(pred.var[v]);
    const double r = target[v] - pred.mean[v];
    terms[v] = 0.5 * std::log(var) + r * r / (2.0 * var);
  }
  return summed(terms);
}

LossValue kld_loss(const GaussianPrediction & pred, const EncodedVector & label, const EncodedVector & label_var)
{
  EncodedVector terms{};
  for (std::size_t v = 0; v < kEncodedDim; ++v) {
    const double var = floored(pred.var[v]);
    const double r = label[v] - pred.mean[v];
    terms[v] = 0.5 * std::log(var / label_var[v]) + (label_var[v] + r * r) / (2.0 * var);
  }
  return summed(terms);
}

LossGradient loss_gradients(
  LossKind kind, const GaussianPrediction & pred, const EncodedVector & target,
  const EncodedVector & label_var)
{
  LossGradient g;
  for (std::size_t v = 0; v < kEncodedDim; ++v) {
    const double var = floored(pred.var[v]);
    const double r = target[v] - pred.mean[v];
    const double spread = kind == LossKind::Kld ? label_var[v] : 0.0;
    g.d_mean[v] = -r / var;
    g.d_var[v] = 1.0 / (2.0 * var) - (spread + r * r) / (2.0 * var * var);
  }
  return g;
}

EncodedVector sample_label(const EncodedVector & label, const EncodedVector & label_var, std::uint64_t seed)
{
  Rng rng(seed);
  EncodedVector out{};
  for (std::size_t v = 0; v < kEncodedDim; ++v) {
    if (label_var[v] < 0.0) {
      throw std::invalid_argument("label variance must be non-negative");
    }
    out[v] = label[v] + std::sqrt(label_var[v]) * rng.normal();
  }
  return out;
}

double MonteCarloEstimate::standard_error() const
{
  return n == 0 ? 0.0 : sample_std / std::sqrt(static_cast<double>(n));
}

MonteCarloEstimate mc_expected_nll(
  const GaussianPrediction & pred, const EncodedVector & label, const EncodedVector & label_var,
  std::size_t n_samples, std::uint64_t seed)
{
  if (n_samples == 0) {
    throw std::invalid_argument("mc_expected_nll needs at least one sample");
  }
  // Welford accumulation.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double x = nll_loss(pred, sample_label(label, label_var, derive_seed(seed, i))).total;
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
  }
  MonteCarloEstimate est;
  est.mean = mean;
  est.n = n_samples;
  est.sample_std = n_samples > 1 ? std::sqrt(m2 / static_cast<double>(n_samples - 1)) : 0.0;
  return est;
}

double expected_nll_analytic(
  const GaussianPrediction & pred, const EncodedVector & label, const EncodedVector & label_var)
{
  double total = 0.0;
  for (std::size_t v = 0; v < kEncodedDim; ++v) {
    const double var = floored(pred.var[v]);
    const double r = label[v] - pred.mean[v];
    total += 0.5 * std::log(var) + (label_var[v] + r * r) / (2.0 * var);
  }
  return total;
}

}  // namespace bevlu
