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

#include "bevlu/regressor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bevlu/rng.hpp"

namespace bevlu
{

ObjectFeatures compute_features(const PointSetBEV & obs)
{
  if (obs.empty()) {
    throw EmptyObservation("features need at least one point");
  }
  const double m = static_cast<double>(obs.size());
  Vec2 c{0.0, 0.0};
  for (const Vec2 p : obs.points) {
    c = c + p;
  }
  c = (1.0 / m) * c;

  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (const Vec2 p : obs.points) {
    const Vec2 d = p - c;
    sxx += d.x * d.x;
    syy += d.y * d.y;
    sxy += d.x * d.y;
  }
  const double phi = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const Vec2 major{std::cos(phi), std::sin(phi)};
  const Vec2 minor{-major.y, major.x};
  double lo_a = 0.0;
  double hi_a = 0.0;
  double lo_b = 0.0;
  double hi_b = 0.0;
  for (const Vec2 p : obs.points) {
    const Vec2 d = p - c;
    lo_a = std::min(lo_a, dot(d, major));
    hi_a = std::max(hi_a, dot(d, major));
    lo_b = std::min(lo_b, dot(d, minor));
    hi_b = std::max(hi_b, dot(d, minor));
  }

  ObjectFeatures f;
  f.reference = c;
  f.values.reserve(kFeatureDim);
  f.values.push_back(std::log1p(m));
  f.values.push_back(c.x);
  f.values.push_back(c.y);
  f.values.push_back(hi_a - lo_a);
  f.values.push_back(hi_b - lo_b);
  f.values.push_back(std::cos(2.0 * phi));
  f.values.push_back(std::sin(2.0 * phi));

  std::vector<double> patch(kPatchCells * kPatchCells, 0.0);
  const double half = 0.5 * kPatchCellSize * static_cast<double>(kPatchCells);
  for (const Vec2 p : obs.points) {
    const double u = (p.x - c.x + half) / kPatchCellSize;
    const double v = (p.y - c.y + half) / kPatchCellSize;
    if (u < 0.0 || v < 0.0) {
      continue;
    }
    const auto iu = static_cast<std::size_t>(u);
    const auto iv = static_cast<std::size_t>(v);
    if (iu < kPatchCells && iv < kPatchCells) {
      patch[iu * kPatchCells + iv] += 1.0 / m;
    }
  }
  f.values.insert(f.values.end(), patch.begin(), patch.end());
  return f;
}

Regressor::Regressor(std::size_t inputs, std::size_t hidden)
: inputs_(inputs),
  hidden_(hidden),
  params_(hidden * inputs + hidden + outputs() * hidden + outputs(), 0.0),
  feature_mean_(inputs, 0.0),
  feature_scale_(inputs, 1.0)
{
}

void Regressor::standardize(std::span<const double> features, std::vector<double> & out) const
{
  out.resize(inputs_);
  for (std::size_t i = 0; i < inputs_; ++i) {
    out[i] = (features[i] - feature_mean_[i]) * feature_scale_[i];
  }
}

std::array<double, 12> Regressor::forward(std::span<const double> features) const
{
  std::vector<double> x;
  standardize(features, x);
  std::vector<double> h(hidden_);
  for (std::size_t j = 0; j < hidden_; ++j) {
    double z = params_[b1() + j];
    const double * row = &params_[w1() + j * inputs_];
    for (std::size_t i = 0; i < inputs_; ++i) {
      z += row[i] * x[i];
    }
    h[j] = std::tanh(z);
  }
  std::array<double, 12> o{};
  for (std::size_t k = 0; k < outputs(); ++k) {
    double z = params_[b2() + k];
    const double * row = &params_[w2() + k * hidden_];
    for (std::size_t j = 0; j < hidden_; ++j) {
      z += row[j] * h[j];
    }
    o[k] = z;
  }
  return o;
}

namespace
{

const double kLogVarFloor = std::log(kPredVarFloor);

GaussianPrediction to_prediction(const std::array<double, 12> & o)
{
  GaussianPrediction p;
  for (std::size_t v = 0; v < kEncodedDim; ++v) {
    p.mean[v] = o[v];
    p.var[v] = std::exp(std::max(o[kEncodedDim + v], kLogVarFloor));
  }
  return p;
}

}  // namespace

GaussianPrediction Regressor::predict(std::span<const double> features) const
{
  return to_prediction(forward(features));
}

double Regressor::loss_and_gradient(
  std::span<const TrainingSample> batch, LossKind kind, std::span<const EncodedVector> targets,
  std::vector<double> & grad) const
{
  grad.assign(params_.size(), 0.0);
  std::vector<double> x;
  std::vector<double> h(hidden_);
  std::vector<double> dh(hidden_);
  double total = 0.0;
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  for (std::size_t s = 0; s < batch.size(); ++s) {
    const TrainingSample & sample = batch[s];
    const EncodedVector & target = targets.empty() ? sample.target : targets[s];
    standardize(sample.features, x);
    for (std::size_t j = 0; j < hidden_; ++j) {
      double z = params_[b1() + j];
      const double * row = &params_[w1() + j * inputs_];
      for (std::size_t i = 0; i < inputs_; ++i) {
        z += row[i] * x[i];
      }
      h[j] = std::tanh(z);
    }
    std::array<double, 12> o{};
    for (std::size_t k = 0; k < outputs(); ++k) {
      double z = params_[b2() + k];
      const double * row = &params_[w2() + k * hidden_];
      for (std::size_t j = 0; j < hidden_; ++j) {
        z += row[j] * h[j];
      }
      o[k] = z;
    }
    const GaussianPrediction pred = to_prediction(o);
    const LossValue lv = kind == LossKind::Kld ? kld_loss(pred, target, sample.label_var) : nll_loss(pred, target);
    total += lv.total;
    const LossGradient lg = loss_gradients(kind, pred, target, sample.label_var);

    std::array<double, 12> dout{};
    for (std::size_t v = 0; v < kEncodedDim; ++v) {
      dout[v] = lg.d_mean[v] * inv_n;
      // d var / d s = var above the floor, 0 where the floor is active.
      const bool floored = o[kEncodedDim + v] < kLogVarFloor;
      dout[kEncodedDim + v] = floored ? 0.0 : lg.d_var[v] * pred.var[v] * inv_n;
    }
    std::fill(dh.begin(), dh.end(), 0.0);
    for (std::size_t k = 0; k < outputs(); ++k) {
      grad[b2() + k] += dout[k];
      double * grow = &grad[w2() + k * hidden_];
      const double * row = &params_[w2() + k * hidden_];
      for (std::size_t j = 0; j < hidden_; ++j) {
        grow[j] += dout[k] * h[j];
        dh[j] += dout[k] * row[j];
      }
    }
    for (std::size_t j = 0; j < hidden_; ++j) {
      const double dz = dh[j] * (1.0 - h[j] * h[j]);
      grad[b1() + j] += dz;
      double * grow = &grad[w1() + j * inputs_];
      for (std::size_t i = 0; i < inputs_; ++i) {
        grow[i] += dz * x[i];
      }
    }
  }
  return total * inv_n;
}

double Regressor::loss(std::span<const TrainingSample> batch, LossKind kind, std::span<const EncodedVector> targets) const
{
  double total = 0.0;
  for (std::size_t s = 0; s < batch.size(); ++s) {
    const EncodedVector & target = targets.empty() ? batch[s].target : targets[s];
    const GaussianPrediction pred = predict(batch[s].features);
    total += kind == LossKind::Kld ? kld_loss(pred, target, batch[s].label_var).total : nll_loss(pred, target).total;
  }
  return total / static_cast<double>(batch.size());
}

TrainResult train_regressor(std::span<const TrainingSample> dataset, const TrainConfig & cfg)
{
  if (dataset.empty()) {
    throw std::invalid_argument("training set is empty");
  }
  if (!(cfg.learning_rate > 0.0) || cfg.batch_size == 0 || cfg.hidden == 0) {
    throw std::invalid_argument("learning rate, batch size and hidden width must be positive");
  }
  const std::size_t in = dataset.front().features.size();
  TrainResult result{Regressor(in, cfg.hidden), {}};
  Regressor & model = result.model;

  // Feature standardization from the training set.
  const double n = static_cast<double>(dataset.size());
  for (std::size_t i = 0; i < in; ++i) {
    double mean = 0.0;
    for (const auto & s : dataset) {
      mean += s.features[i];
    }
    mean /= n;
    double var = 0.0;
    for (const auto & s : dataset) {
      var += (s.features[i] - mean) * (s.features[i] - mean);
    }
    var /= n;
    model.feature_mean()[i] = mean;
    model.feature_scale()[i] = var > 1e-12 ? 1.0 / std::sqrt(var) : 0.0;
  }

  // Glorot-uniform weights; output biases start at the target means and a common log-variance.
  Rng init(derive_seed(cfg.seed, 0x1a17));
  auto & p = model.params();
  const double a1 = std::sqrt(6.0 / static_cast<double>(in + cfg.hidden));
  const double a2 = std::sqrt(6.0 / static_cast<double>(cfg.hidden + Regressor::outputs()));
  const std::size_t b1 = cfg.hidden * in;
  const std::size_t w2 = b1 + cfg.hidden;
  const std::size_t b2 = w2 + Regressor::outputs() * cfg.hidden;
  for (std::size_t k = 0; k < b1; ++k) {
    p[k] = init.uniform(-a1, a1);
  }
  for (std::size_t k = w2; k < b2; ++k) {
    p[k] = init.uniform(-a2, a2);
  }
  for (std::size_t v = 0; v < kEncodedDim; ++v) {
    double mean = 0.0;
    for (const auto & s : dataset) {
      mean += s.target[v];
    }
    p[b2 + v] = mean / n;
    p[b2 + kEncodedDim + v] = cfg.init_log_var;
  }

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<TrainingSample> batch;
  std::vector<EncodedVector> targets;
  std::vector<double> grad;
  std::size_t batch_index = 0;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng shuffle(derive_seed(cfg.seed, 0x5000 + epoch));
    for (std::size_t i = order.size(); i-- > 1;) {
      std::swap(order[i], order[static_cast<std::size_t>(shuffle.next_u64() % (i + 1))]);
    }
    double epoch_loss = 0.0;
    std::size_t epoch_batches = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size, ++batch_index) {
      const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
      batch.clear();
      targets.clear();
      for (std::size_t k = start; k < stop; ++k) {
        const TrainingSample & s = dataset[order[k]];
        batch.push_back(s);
        if (cfg.sample_labels) {
          const std::uint64_t key = derive_seed(derive_seed(cfg.seed, 0xdead + epoch), order[k]);
          targets.push_back(sample_label(s.target, s.label_var, key));
        }
      }
      const double l = model.loss_and_gradient(batch, cfg.loss, targets, grad);
      if (!std::isfinite(l)) {
        throw NonFiniteLoss(batch_index);
      }
      double scale = cfg.learning_rate;
      if (cfg.grad_clip > 0.0) {
        double sq = 0.0;
        for (const double g : grad) {
          sq += g * g;
        }
        const double gnorm = std::sqrt(sq);
        if (gnorm > cfg.grad_clip) {
          scale *= cfg.grad_clip / gnorm;
        }
      }
      for (std::size_t k = 0; k < p.size(); ++k) {
        p[k] -= scale * grad[k];
      }
      epoch_loss += l;
      ++epoch_batches;
    }
    result.epoch_loss.push_back(epoch_loss / static_cast<double>(epoch_batches));
  }
  return result;
}

}  // namespace bevlu
