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

#ifndef BEVLU__EXPERIMENT_HPP_
#define BEVLU__EXPERIMENT_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bevlu/evaluation.hpp"
#include "bevlu/heuristics.hpp"
#include "bevlu/label_uncertainty.hpp"
#include "bevlu/regressor.hpp"
#include "bevlu/scene.hpp"

namespace bevlu
{

/// Source of the label variance a method trains against.
enum class UncertaintyProvider { None, Fixed, NumPoints, ConvexHull, Generative };

const char * to_string(UncertaintyProvider p);

struct MethodSpec
{
  std::string name;
  LossKind loss{LossKind::Nll};
  UncertaintyProvider provider{UncertaintyProvider::None};
  double fixed_sigma2{0.01};
  bool sample_labels{false};
};

/// baseline-nll, kld-fixed, kld-numpoints, kld-covxhull, kld-inferred, nll-sampled.
std::vector<MethodSpec> default_methods();

/// Parses a method name of the default table or "kld-fixed:<sigma2>".
MethodSpec method_from_name(const std::string & name);

struct ExperimentConfig
{
  SceneConfig scene;
  std::size_t train_scenes{150};
  std::size_t val_scenes{80};
  std::size_t min_detection_points{3};
  TrainConfig train;
  GenerativeModelConfig generative;
  HeuristicConfig heuristic;
  std::vector<MethodSpec> methods = default_methods();
  std::vector<double> sweep_log10_var{-4.0, -3.0, -2.0, -1.0, 0.0};
  std::size_t n_seeds{5};
  std::uint64_t root_seed{20201};
  RecallVariant variant{RecallVariant::R41};
  std::size_t threads{0};  // 0: hardware concurrency

  void validate() const;
};

inline constexpr std::array<Difficulty, 3> kEvalLevels{Difficulty::Easy, Difficulty::Moderate, Difficulty::Hard};

struct CellResult
{
  std::string method;
  std::size_t seed_index{0};
  std::uint64_t seed{0};
  bool ok{false};
  std::string error;
  std::array<APResult, 3> ap{};  // Easy, Moderate, Hard
  double final_train_loss{0.0};
};

struct MethodSummary
{
  std::string method;
  std::array<double, 3> mean{};  // AP in percent
  std::array<double, 3> std{};
  std::size_t n_ok{0};
};

struct SweepPoint
{
  double log10_var{0.0};
  std::array<double, 3> mean{};
  std::array<double, 3> std{};
  std::size_t n_ok{0};
};

struct ExperimentResult
{
  std::vector<CellResult> table_cells;
  std::vector<CellResult> sweep_cells;
  std::vector<MethodSummary> table;
  std::vector<SweepPoint> sweep;
};

/// Per-seed synthetic benchmark shared by every method of that seed.
struct SeedData
{
  std::uint64_t seed{0};
  std::vector<TrainingSample> train_base;  // label_var left empty
  std::vector<BoxBEV> train_labels;
  std::vector<PointSetBEV> train_points;
  std::vector<LabelVector> var_generative;
  std::vector<LabelVector> var_numpoints;
  std::vector<LabelVector> var_covxhull;
  std::vector<ObjectFeatures> val_features;
  std::vector<std::size_t> val_frame;      // frame of each val feature row
  std::vector<std::vector<GroundTruth>> val_truth;  // per frame
};

SeedData build_seed_data(const ExperimentConfig & cfg, std::uint64_t seed);

/// Training samples for one method: targets and encoded label variances.
std::vector<TrainingSample> training_set_for(const SeedData & data, const MethodSpec & method);

/// Detections of a trained model on the validation frames.
/// Score is the negative mean predicted log-variance.
std::vector<FrameEval> detect_validation(const SeedData & data, const Regressor & model);

CellResult run_cell(const ExperimentConfig & cfg, const SeedData & data, const MethodSpec & method, std::size_t seed_index);

ExperimentResult run_experiment(const ExperimentConfig & cfg);

}  // namespace bevlu

#endif  // BEVLU__EXPERIMENT_HPP_
