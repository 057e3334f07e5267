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

#ifndef BEVLU__REGRESSOR_HPP_
#define BEVLU__REGRESSOR_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bevlu/common.hpp"
#include "bevlu/encoding.hpp"
#include "bevlu/geometry.hpp"
#include "bevlu/losses.hpp"

namespace bevlu
{

/// Occupancy patch: kPatchCells x kPatchCells cells of kPatchCellSize meters, centred on the centroid.
inline constexpr std::size_t kPatchCells = 8;
inline constexpr double kPatchCellSize = 1.0;
/// log count, centroid (2), principal-axis extents (2), principal-axis orientation (2), patch.
inline constexpr std::size_t kFeatureDim = 7 + kPatchCells * kPatchCells;

struct ObjectFeatures
{
  std::vector<double> values;  // kFeatureDim entries
  Vec2 reference;              // point centroid; origin of the dx, dy targets
};

/// Throws EmptyObservation for an empty point set.
ObjectFeatures compute_features(const PointSetBEV & obs);

struct TrainingSample
{
  std::vector<double> features;
  EncodedVector target{};     // encoded label relative to the reference
  EncodedVector label_var{};  // encoded label variance (KLD target / sampling width)
};

/// Two-layer perceptron (tanh hidden layer) emitting 6 means and 6 log-variances.
/// Parameters live in one flat vector: W1 (hidden x in), b1, W2 (12 x hidden), b2.
class Regressor
{
public:
  Regressor() = default;
  Regressor(std::size_t inputs, std::size_t hidden);

  std::size_t inputs() const { return inputs_; }
  std::size_t hidden() const { return hidden_; }
  static constexpr std::size_t outputs() { return 2 * kEncodedDim; }

  std::vector<double> & params() { return params_; }
  const std::vector<double> & params() const { return params_; }
  std::size_t param_count() const { return params_.size(); }

  /// Per-feature standardization applied before the first layer.
  std::vector<double> & feature_mean() { return feature_mean_; }
  std::vector<double> & feature_scale() { return feature_scale_; }
  const std::vector<double> & feature_mean() const { return feature_mean_; }
  const std::vector<double> & feature_scale() const { return feature_scale_; }

  /// Raw outputs (means followed by log-variances).
  std::array<double, 12> forward(std::span<const double> features) const;

  GaussianPrediction predict(std::span<const double> features) const;

  /// Mean loss over the batch and its gradient w.r.t. params(). When `targets`
  /// is non-empty it overrides each sample's target (label sampling).
  double loss_and_gradient(
    std::span<const TrainingSample> batch, LossKind kind, std::span<const EncodedVector> targets,
    std::vector<double> & grad) const;

  double loss(std::span<const TrainingSample> batch, LossKind kind, std::span<const EncodedVector> targets = {}) const;

private:
  std::size_t w1() const { return 0; }
  std::size_t b1() const { return hidden_ * inputs_; }
  std::size_t w2() const { return b1() + hidden_; }
  std::size_t b2() const { return w2() + outputs() * hidden_; }

  void standardize(std::span<const double> features, std::vector<double> & out) const;

  std::size_t inputs_{0};
  std::size_t hidden_{0};
  std::vector<double> params_;
  std::vector<double> feature_mean_;
  std::vector<double> feature_scale_;
};

struct TrainConfig
{
  LossKind loss{LossKind::Nll};
  bool sample_labels{false};  // redraw targets from N(label, label_var) every epoch
  std::size_t epochs{200};
  double learning_rate{1e-2};
  std::size_t batch_size{32};
  std::size_t hidden{32};
  double grad_clip{10.0};  // global-norm clip; 0 disables
  double init_log_var{-2.0};
  std::uint64_t seed{0};
};

struct TrainResult
{
  Regressor model;
  std::vector<double> epoch_loss;  // mean training loss per epoch
};

/// Mini-batch SGD without momentum. Deterministic per cfg.seed.
/// Throws NonFiniteLoss with the global batch index on divergence.
TrainResult train_regressor(std::span<const TrainingSample> dataset, const TrainConfig & cfg);

}  // namespace bevlu

#endif  // BEVLU__REGRESSOR_HPP_
