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

#include "bevlu/label_uncertainty.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace bevlu
{

void GenerativeModelConfig::validate() const
{
  if (num_reference_points < 4) {
    throw std::invalid_argument("K must be at least 4");
  }
  if (num_nearest < 1 || num_nearest > num_reference_points) {
    throw std::invalid_argument("N must be in [1, K]");
  }
  if (!(sigma_s > 0.0)) {
    throw std::invalid_argument("sigma_s must be positive");
  }
  for (const double v : prior_var) {
    if (!(v > 0.0)) {
      throw std::invalid_argument("prior variances must be positive");
    }
  }
}

double gmm_log_likelihood(const BoxBEV & y, const PointSetBEV & obs, const GenerativeModelConfig & cfg)
{
  if (obs.empty()) {
    throw EmptyObservation("gmm_log_likelihood needs at least one observation");
  }
  const std::size_t k = cfg.num_reference_points;
  const std::size_t n = cfg.num_nearest;
  std::vector<Vec2> refs(k);
  sample_perimeter_points_into(y, refs);

  const double inv_two_var = 1.0 / (2.0 * cfg.sigma_s * cfg.sigma_s);
  const double log_norm =
    -std::log(2.0 * std::numbers::pi * cfg.sigma_s * cfg.sigma_s) - std::log(static_cast<double>(n));

  std::vector<double> d2(k);
  double total = 0.0;
  for (const Vec2 x : obs.points) {
    for (std::size_t j = 0; j < k; ++j) {
      const Vec2 d = x - refs[j];
      d2[j] = d.x * d.x + d.y * d.y;
    }
    if (n < k) {
      std::nth_element(d2.begin(), d2.begin() + static_cast<std::ptrdiff_t>(n - 1), d2.end());
    }
    const double nearest = *std::min_element(d2.begin(), d2.begin() + static_cast<std::ptrdiff_t>(n));
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += std::exp(-(d2[j] - nearest) * inv_two_var);
    }
    total += log_norm - nearest * inv_two_var + std::log(acc);
  }
  return total;
}

LabelVector hessian_steps(const GenerativeModelConfig & cfg)
{
  LabelVector h{};
  for (std::size_t a = 0; a < kLabelDim; ++a) {
    h[a] = std::max(1e-3, 1e-2 * std::sqrt(cfg.prior_var[a]));
  }
  return h;
}

namespace
{

BoxBEV shifted(const BoxBEV & b, std::size_t axis, double delta)
{
  LabelVector v = b.as_vector();
  v[axis] += delta;
  return BoxBEV::from_vector(v);
}

BoxBEV shifted(const BoxBEV & b, std::size_t i, double di, std::size_t j, double dj)
{
  LabelVector v = b.as_vector();
  v[i] += di;
  v[j] += dj;
  return BoxBEV::from_vector(v);
}

GaussianLabel prior_only(const BoxBEV & label, const GenerativeModelConfig & cfg)
{
  GaussianLabel g{label, {}};
  for (std::size_t a = 0; a < kLabelDim; ++a) {
    g.var[a] = clamp_variance(cfg.prior_var[a]);
  }
  return g;
}

}  // namespace

LabelPosterior laplace_posterior(
  const BoxBEV & label, const PointSetBEV & obs, const GenerativeModelConfig & cfg,
  const BoxLogDensity & log_likelihood)
{
  cfg.validate();
  LabelPosterior post;
  for (std::size_t a = 0; a < kLabelDim; ++a) {
    post.precision(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = 1.0 / cfg.prior_var[a];
  }
  if (obs.empty() && !log_likelihood) {
    post.label = prior_only(label, cfg);
    post.covariance = post.precision.inverse();
    return post;
  }

  const BoxLogDensity f = log_likelihood ? log_likelihood : [&](const BoxBEV & y) {
    return gmm_log_likelihood(y, obs, cfg);
  };
  const LabelVector h = hessian_steps(cfg);
  const double f0 = f(label);
  LabelVector f_plus{};
  LabelVector f_minus{};
  for (std::size_t a = 0; a < kLabelDim; ++a) {
    f_plus[a] = f(shifted(label, a, h[a]));
    f_minus[a] = f(shifted(label, a, -h[a]));
  }
  Matrix5d hess = Matrix5d::Zero();
  for (std::size_t i = 0; i < kLabelDim; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    hess(ii, ii) = (f_plus[i] - 2.0 * f0 + f_minus[i]) / (h[i] * h[i]);
    for (std::size_t j = i + 1; j < kLabelDim; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      const double fpp = f(shifted(label, i, h[i], j, h[j]));
      const double fpm = f(shifted(label, i, h[i], j, -h[j]));
      const double fmp = f(shifted(label, i, -h[i], j, h[j]));
      const double fmm = f(shifted(label, i, -h[i], j, -h[j]));
      hess(ii, jj) = hess(jj, ii) = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
    }
  }
  // Observed information projected onto the PSD cone: away from a mode the raw
  // curvature can be positive along some directions.
  const Matrix5d info = -hess;
  if (info.allFinite()) {
    const Eigen::SelfAdjointEigenSolver<Matrix5d> eig(info);
    const Eigen::Matrix<double, 5, 1> lam = eig.eigenvalues().cwiseMax(0.0);
    post.precision += eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();
  } else {
    post.precision += info;
  }

  const Eigen::LLT<Matrix5d> llt(post.precision);
  if (llt.info() != Eigen::Success || !post.precision.allFinite()) {
    post.prior_fallback = true;
    post.label = prior_only(label, cfg);
    post.covariance = Matrix5d::Zero();
    for (std::size_t a = 0; a < kLabelDim; ++a) {
      const auto aa = static_cast<Eigen::Index>(a);
      post.covariance(aa, aa) = cfg.prior_var[a];
    }
    return post;
  }
  post.covariance = llt.solve(Matrix5d::Identity());
  post.label.mean = label;
  for (std::size_t a = 0; a < kLabelDim; ++a) {
    const auto aa = static_cast<Eigen::Index>(a);
    post.label.var[a] = clamp_variance(post.covariance(aa, aa));
  }
  return post;
}

GaussianLabel infer_label_posterior(
  const BoxBEV & label, const PointSetBEV & obs, const GenerativeModelConfig & cfg)
{
  return laplace_posterior(label, obs, cfg).label;
}

GridMarginals posterior_oracle_grid(
  const BoxBEV & label, const PointSetBEV & obs, const GenerativeModelConfig & cfg,
  const LabelVector & half_widths, std::size_t steps_per_axis,
  const BoxLogDensity & log_likelihood)
{
  cfg.validate();
  if (steps_per_axis < 11 || steps_per_axis % 2 == 0) {
    throw std::invalid_argument("steps_per_axis must be odd and at least 11");
  }
  const BoxLogDensity f = log_likelihood ? log_likelihood : [&](const BoxBEV & y) {
    return obs.empty() ? 0.0 : gmm_log_likelihood(y, obs, cfg);
  };

  GridMarginals out;
  std::vector<double> offsets(steps_per_axis);
  std::vector<double> logp(steps_per_axis);
  for (std::size_t a = 0; a < kLabelDim; ++a) {
    for (std::size_t k = 0; k < steps_per_axis; ++k) {
      const double t = -half_widths[a] + 2.0 * half_widths[a] * static_cast<double>(k) /
                                           static_cast<double>(steps_per_axis - 1);
      offsets[k] = t;
      logp[k] = f(shifted(label, a, t)) - 0.5 * t * t / cfg.prior_var[a];
    }
    const double peak = *std::max_element(logp.begin(), logp.end());
    double z = 0.0;
    double m1 = 0.0;
    for (std::size_t k = 0; k < steps_per_axis; ++k) {
      const double wgt = std::exp(logp[k] - peak);
      z += wgt;
      m1 += wgt * offsets[k];
    }
    m1 /= z;
    double m2 = 0.0;
    for (std::size_t k = 0; k < steps_per_axis; ++k) {
      const double d = offsets[k] - m1;
      m2 += std::exp(logp[k] - peak) * d * d;
    }
    out.mean_offset[a] = m1;
    out.variance[a] = m2 / z;
  }
  return out;
}

}  // namespace bevlu
