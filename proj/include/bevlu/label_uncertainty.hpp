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

#ifndef BEVLU__LABEL_UNCERTAINTY_HPP_
#define BEVLU__LABEL_UNCERTAINTY_HPP_

#include <Eigen/Core>

#include <cstddef>
#include <functional>

#include "bevlu/common.hpp"
#include "bevlu/geometry.hpp"

namespace bevlu
{

/// Observation model: each BEV point is drawn from an equal-weight mixture of
/// isotropic Gaussians centred on its N nearest of K perimeter reference points.
struct GenerativeModelConfig
{
  std::size_t num_reference_points{64};  // K
  std::size_t num_nearest{4};            // N
  double sigma_s{0.1};                   // component std, meters
  LabelVector prior_var{0.25, 0.25, 0.25, 0.1, 0.04};

  void validate() const;
};

/// p(y* | x) = N(mean, diag(var)) over (cx, cy, l, w, theta).
struct GaussianLabel
{
  BoxBEV mean;
  LabelVector var{};
};

using Matrix5d = Eigen::Matrix<double, 5, 5>;

/// Laplace posterior at the annotated label, with the internals kept for
/// diagnostics and rendering.
struct LabelPosterior
{
  GaussianLabel label;
  Matrix5d precision = Matrix5d::Zero();
  Matrix5d covariance = Matrix5d::Zero();
  bool prior_fallback{false};  // precision was not positive definite
};

using BoxLogDensity = std::function<double(const BoxBEV &)>;

/// Sum over observations of log[(1/N) sum_{j in N-nearest} Normal2D(x_i; s_j(y), sigma_s^2 I)].
/// The N nearest references are selected for the evaluated box y.
/// Throws EmptyObservation when obs is empty.
double gmm_log_likelihood(const BoxBEV & y, const PointSetBEV & obs, const GenerativeModelConfig & cfg);

/// Per-axis central-difference step used for the Hessian.
LabelVector hessian_steps(const GenerativeModelConfig & cfg);

/// Laplace approximation with the mean fixed at `label`. The log-likelihood
/// defaults to gmm_log_likelihood; tests may inject another one.
LabelPosterior laplace_posterior(
  const BoxBEV & label, const PointSetBEV & obs, const GenerativeModelConfig & cfg,
  const BoxLogDensity & log_likelihood = {});

/// Diagonal of the Laplace posterior covariance, clamped to [kVarMin, kVarMax].
GaussianLabel infer_label_posterior(
  const BoxBEV & label, const PointSetBEV & obs, const GenerativeModelConfig & cfg);

struct GridMarginals
{
  LabelVector mean_offset{};  // discrete posterior mean minus the label value
  LabelVector variance{};
};

/// Brute-force oracle: for each axis, the normalized posterior (likelihood
/// times prior) on a uniform axis-aligned slice through the label.
GridMarginals posterior_oracle_grid(
  const BoxBEV & label, const PointSetBEV & obs, const GenerativeModelConfig & cfg,
  const LabelVector & half_widths, std::size_t steps_per_axis,
  const BoxLogDensity & log_likelihood = {});

}  // namespace bevlu

#endif  // BEVLU__LABEL_UNCERTAINTY_HPP_
