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

#ifndef BEVLU__LOSSES_HPP_
#define BEVLU__LOSSES_HPP_

#include <cstddef>
#include <cstdint>

#include "bevlu/common.hpp"

namespace bevlu
{

/// q(y* | x) = N(mean, var) per encoded variable, as emitted by the detector head.
struct GaussianPrediction
{
  EncodedVector mean{};
  EncodedVector var{};
};

struct LossValue
{
  double total{0.0};
  EncodedVector per_variable{};
};

enum class LossKind { Nll, Kld };

struct LossGradient
{
  EncodedVector d_mean{};
  EncodedVector d_var{};
};

/// Attenuated regression loss: log(var)/2 + (target - mean)^2 / (2 var), summed over variables.
LossValue nll_loss(const GaussianPrediction & pred, const EncodedVector & target);

/// Closed-form KL(p || q) + 1/2 for p = N(label, label_var):
/// log(sd_q / sd_p) + var_p / (2 var_q) + (label - mean)^2 / (2 var_q).
LossValue kld_loss(const GaussianPrediction & pred, const EncodedVector & label, const EncodedVector & label_var);

/// Analytic gradients with respect to the predicted means and variances.
/// `label_var` is ignored for LossKind::Nll.
LossGradient loss_gradients(
  LossKind kind, const GaussianPrediction & pred, const EncodedVector & target,
  const EncodedVector & label_var = {});

/// Per-variable Gaussian draw y* ~ N(label, label_var). Draw v of a given seed
/// depends only on (seed, v).
EncodedVector sample_label(const EncodedVector & label, const EncodedVector & label_var, std::uint64_t seed);

struct MonteCarloEstimate
{
  double mean{0.0};
  double sample_std{0.0};
  std::size_t n{0};

  double standard_error() const;
};

/// Average NLL of `pred` over targets sampled from N(label, label_var).
MonteCarloEstimate mc_expected_nll(
  const GaussianPrediction & pred, const EncodedVector & label, const EncodedVector & label_var,
  std::size_t n_samples, std::uint64_t seed);

/// E_p[nll_loss] = sum_v log(var_q)/2 + (var_p + (label - mean)^2) / (2 var_q).
double expected_nll_analytic(
  const GaussianPrediction & pred, const EncodedVector & label, const EncodedVector & label_var);

}  // namespace bevlu

#endif  // BEVLU__LOSSES_HPP_
