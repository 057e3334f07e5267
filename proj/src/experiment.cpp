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

#include "bevlu/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <thread>

#include "bevlu/encoding.hpp"
#include "bevlu/rng.hpp"

namespace bevlu
{

const char * to_string(UncertaintyProvider p)
{
  switch (p) {
    case UncertaintyProvider::None:
      return "none";
    case UncertaintyProvider::Fixed:
      return "fixed";
    case UncertaintyProvider::NumPoints:
      return "numpoints";
    case UncertaintyProvider::ConvexHull:
      return "covxhull";
    case UncertaintyProvider::Generative:
      return "generative";
  }
  return "none";
}

std::vector<MethodSpec> default_methods()
{
  return {
    {"baseline-nll", LossKind::Nll, UncertaintyProvider::None, 0.0, false},
    {"kld-fixed", LossKind::Kld, UncertaintyProvider::Fixed, 0.01, false},
    {"kld-numpoints", LossKind::Kld, UncertaintyProvider::NumPoints, 0.0, false},
    {"kld-covxhull", LossKind::Kld, UncertaintyProvider::ConvexHull, 0.0, false},
    {"kld-inferred", LossKind::Kld, UncertaintyProvider::Generative, 0.0, false},
    {"nll-sampled", LossKind::Nll, UncertaintyProvider::Generative, 0.0, true},
  };
}

MethodSpec method_from_name(const std::string & name)
{
  for (const auto & m : default_methods()) {
    if (m.name == name) {
      return m;
    }
  }
  const std::string prefix = "kld-fixed:";
  if (name.rfind(prefix, 0) == 0) {
    MethodSpec m{name, LossKind::Kld, UncertaintyProvider::Fixed, std::stod(name.substr(prefix.size())), false};
    fixed_variance(m.fixed_sigma2);
    return m;
  }
  throw std::invalid_argument("unknown method: " + name);
}

void ExperimentConfig::validate() const
{
  scene.validate();
  generative.validate();
  heuristic.validate();
  if (n_seeds == 0) {
    throw std::invalid_argument("n_seeds must be at least 1");
  }
  if (train_scenes == 0 || val_scenes == 0) {
    throw std::invalid_argument("scene counts must be positive");
  }
  for (const double lv : sweep_log10_var) {
    fixed_variance(std::pow(10.0, lv));
  }
}

SeedData build_seed_data(const ExperimentConfig & cfg, std::uint64_t seed)
{
  SeedData d;
  d.seed = seed;
  SceneConfig sc = cfg.scene;
  for (std::size_t i = 0; i < cfg.train_scenes; ++i) {
    sc.seed = derive_seed(seed, 1000 + i);
    for (auto & obj : generate_scene(sc).objects) {
      if (obj.points.size() < cfg.min_detection_points) {
        continue;
      }
      ObjectFeatures f = compute_features(obj.points);
      TrainingSample s;
      s.target = encode_box(obj.label, f.reference).as_vector();
      s.features = std::move(f.values);
      d.train_base.push_back(std::move(s));
      d.var_generative.push_back(infer_label_posterior(obj.label, obj.points, cfg.generative).var);
      d.var_numpoints.push_back(broadcast_variance(variance_from_point_count(obj.points.size(), cfg.heuristic)));
      d.var_covxhull.push_back(broadcast_variance(variance_from_convex_hull(obj.label, obj.points, cfg.heuristic)));
      d.train_labels.push_back(obj.label);
      d.train_points.push_back(std::move(obj.points));
    }
  }
  for (std::size_t i = 0; i < cfg.val_scenes; ++i) {
    sc.seed = derive_seed(seed, 900000 + i);
    const Scene scene = generate_scene(sc);
    std::vector<GroundTruth> truth;
    for (const auto & obj : scene.objects) {
      truth.push_back({obj.truth, obj.difficulty});
      if (obj.points.size() >= cfg.min_detection_points) {
        d.val_features.push_back(compute_features(obj.points));
        d.val_frame.push_back(i);
      }
    }
    d.val_truth.push_back(std::move(truth));
  }
  return d;
}

std::vector<TrainingSample> training_set_for(const SeedData & data, const MethodSpec & method)
{
  std::vector<TrainingSample> out = data.train_base;
  for (std::size_t i = 0; i < out.size(); ++i) {
    LabelVector var{};
    switch (method.provider) {
      case UncertaintyProvider::None:
        var = broadcast_variance(kVarMin);
        break;
      case UncertaintyProvider::Fixed:
        var = fixed_variance(method.fixed_sigma2);
        break;
      case UncertaintyProvider::NumPoints:
        var = data.var_numpoints[i];
        break;
      case UncertaintyProvider::ConvexHull:
        var = data.var_covxhull[i];
        break;
      case UncertaintyProvider::Generative:
        var = data.var_generative[i];
        break;
    }
    if (method.provider == UncertaintyProvider::Fixed) {
      // A fixed variance is shared by every encoded variable, not propagated.
      out[i].label_var.fill(method.fixed_sigma2);
    } else {
      out[i].label_var = propagate_variance(var, data.train_labels[i]);
    }
  }
  return out;
}

std::vector<FrameEval> detect_validation(const SeedData & data, const Regressor & model)
{
  std::vector<FrameEval> frames(data.val_truth.size());
  for (std::size_t f = 0; f < frames.size(); ++f) {
    frames[f].ground_truth = data.val_truth[f];
  }
  for (std::size_t k = 0; k < data.val_features.size(); ++k) {
    const auto & feat = data.val_features[k];
    const GaussianPrediction pred = model.predict(feat.values);
    Detection det;
    try {
      det.box = decode_box(BoxEncoding::from_vector(pred.mean), feat.reference);
    } catch (const Error &) {
      continue;
    } catch (const std::invalid_argument &) {
      continue;
    }
    double mean_log_var = 0.0;
    for (std::size_t v = 0; v < kEncodedDim; ++v) {
      mean_log_var += std::log(pred.var[v]);
    }
    det.score = -mean_log_var / static_cast<double>(kEncodedDim);
    det.var = pred.var;
    frames[data.val_frame[k]].detections.push_back(det);
  }
  return frames;
}

CellResult run_cell(const ExperimentConfig & cfg, const SeedData & data, const MethodSpec & method, std::size_t seed_index)
{
  CellResult cell;
  cell.method = method.name;
  cell.seed_index = seed_index;
  cell.seed = data.seed;
  try {
    TrainConfig tc = cfg.train;
    tc.loss = method.loss;
    tc.sample_labels = method.sample_labels;
    tc.seed = derive_seed(data.seed, 77);
    const auto samples = training_set_for(data, method);
    const TrainResult trained = train_regressor(samples, tc);
    cell.final_train_loss = trained.epoch_loss.empty() ? 0.0 : trained.epoch_loss.back();
    const auto frames = detect_validation(data, trained.model);
    for (std::size_t k = 0; k < kEvalLevels.size(); ++k) {
      cell.ap[k] = evaluate_frames(frames, kEvalLevels[k], cfg.variant);
    }
    cell.ok = true;
  } catch (const std::exception & e) {
    cell.ok = false;
    cell.error = e.what();
  }
  return cell;
}

namespace
{

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)> & body)
{
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(threads, n); ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        body(i);
      }
    });
  }
  for (auto & th : pool) {
    th.join();
  }
}

template <typename Summary>
void summarize(const std::vector<const CellResult *> & cells, Summary & out)
{
  for (std::size_t k = 0; k < 3; ++k) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto * c : cells) {
      if (c->ok) {
        sum += 100.0 * c->ap[k].ap;
        ++n;
      }
    }
    out.n_ok = n;
    out.mean[k] = n > 0 ? sum / static_cast<double>(n) : 0.0;
    double sq = 0.0;
    for (const auto * c : cells) {
      if (c->ok) {
        const double d = 100.0 * c->ap[k].ap - out.mean[k];
        sq += d * d;
      }
    }
    out.std[k] = n > 1 ? std::sqrt(sq / static_cast<double>(n - 1)) : 0.0;
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig & cfg)
{
  cfg.validate();
  const std::size_t threads = cfg.threads > 0 ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());

  std::vector<SeedData> seeds(cfg.n_seeds);
  parallel_for(cfg.n_seeds, threads, [&](std::size_t s) {
    seeds[s] = build_seed_data(cfg, derive_seed(cfg.root_seed, s));
  });

  std::vector<MethodSpec> sweep_methods;
  for (const double lv : cfg.sweep_log10_var) {
    char name[32];
    std::snprintf(name, sizeof(name), "sweep:%+.2f", lv);
    MethodSpec m{name, LossKind::Kld, UncertaintyProvider::Fixed, std::pow(10.0, lv), false};
    sweep_methods.push_back(m);
  }
  const std::size_t per_seed = cfg.methods.size() + sweep_methods.size();
  std::vector<CellResult> cells(cfg.n_seeds * per_seed);
  parallel_for(cells.size(), threads, [&](std::size_t idx) {
    const std::size_t s = idx / per_seed;
    const std::size_t m = idx % per_seed;
    const MethodSpec & spec = m < cfg.methods.size() ? cfg.methods[m] : sweep_methods[m - cfg.methods.size()];
    cells[idx] = run_cell(cfg, seeds[s], spec, s);
  });

  ExperimentResult res;
  for (std::size_t m = 0; m < per_seed; ++m) {
    std::vector<const CellResult *> group;
    for (std::size_t s = 0; s < cfg.n_seeds; ++s) {
      const CellResult & c = cells[s * per_seed + m];
      group.push_back(&c);
      (m < cfg.methods.size() ? res.table_cells : res.sweep_cells).push_back(c);
    }
    if (m < cfg.methods.size()) {
      MethodSummary ms;
      ms.method = cfg.methods[m].name;
      summarize(group, ms);
      res.table.push_back(ms);
    } else {
      SweepPoint sp;
      sp.log10_var = cfg.sweep_log10_var[m - cfg.methods.size()];
      summarize(group, sp);
      res.sweep.push_back(sp);
    }
  }
  return res;
}

}  // namespace bevlu
