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

#ifndef BEVLU__EVALUATION_HPP_
#define BEVLU__EVALUATION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bevlu/geometry.hpp"
#include "bevlu/kitti_io.hpp"

namespace bevlu
{

inline constexpr double kBevIouThreshold = 0.7;

struct Detection
{
  BoxBEV box;
  double score{0.0};
  std::optional<EncodedVector> var;  // carried through, never scored
};

struct GroundTruth
{
  BoxBEV box;
  Difficulty difficulty{Difficulty::Ignored};
};

GroundTruth ground_truth_from(const LabeledObject & obj);

struct ScoredOutcome
{
  double score{0.0};
  bool tp{false};
};

struct MatchResult
{
  std::vector<ScoredOutcome> outcomes;  // descending score; ignored matches removed
  std::size_t n_gt{0};                  // ground truths active at the evaluated difficulty
  std::size_t unmatched_gt{0};          // false negatives
};

/// Greedy one-to-one matching in descending score order. A ground truth is
/// active when its difficulty is not harder than `level`; inactive ones absorb
/// matching detections without producing TP or FP.
MatchResult match_detections(
  std::span<const Detection> dets, std::span<const GroundTruth> gts, double iou_thresh = kBevIouThreshold,
  Difficulty level = Difficulty::Hard);

/// R41 averages all 41 positions {0, 1/40, ..., 1}; R40 drops r = 0.
enum class RecallVariant { R41, R40 };

const char * to_string(RecallVariant v);

struct APResult
{
  double ap{0.0};
  std::vector<double> recalls;
  std::vector<double> precisions;
  std::size_t tp{0};
  std::size_t fp{0};
  std::size_t fn{0};
  RecallVariant variant{RecallVariant::R41};
};

std::vector<double> recall_positions(RecallVariant variant);

/// Interpolated AP. Operating points are the distinct score thresholds; the
/// precision at recall position r is the best precision among operating points
/// with recall >= r, or 0 when none reaches r. Throws NoGroundTruth when n_gt == 0.
APResult average_precision(
  std::span<const ScoredOutcome> outcomes, std::size_t n_gt, RecallVariant variant = RecallVariant::R41);

/// Frame-wise detections and ground truth, matched per frame and pooled into one PR sweep.
struct FrameEval
{
  std::vector<Detection> detections;
  std::vector<GroundTruth> ground_truth;
};

APResult evaluate_frames(
  std::span<const FrameEval> frames, Difficulty level, RecallVariant variant = RecallVariant::R41,
  double iou_thresh = kBevIouThreshold);

}  // namespace bevlu

#endif  // BEVLU__EVALUATION_HPP_
