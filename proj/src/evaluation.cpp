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

#include "bevlu/evaluation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bevlu
{

GroundTruth ground_truth_from(const LabeledObject & obj) { return {obj.box, difficulty_of(obj)}; }

const char * to_string(RecallVariant v) { return v == RecallVariant::R41 ? "R41" : "R40"; }

MatchResult match_detections(
  std::span<const Detection> dets, std::span<const GroundTruth> gts, double iou_thresh, Difficulty level)
{
  if (!(iou_thresh > 0.0) || iou_thresh > 1.0) {
    throw std::invalid_argument("iou threshold must be in (0, 1]");
  }
  const auto active = [level](const GroundTruth & g) {
    return g.difficulty != Difficulty::Ignored && static_cast<int>(g.difficulty) <= static_cast<int>(level);
  };

  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dets[a].score > dets[b].score;
  });

  MatchResult result;
  for (const auto & g : gts) {
    result.n_gt += active(g) ? 1 : 0;
  }
  std::vector<bool> taken(gts.size(), false);
  for (const std::size_t d : order) {
    std::size_t best = gts.size();
    double best_iou = -1.0;
    bool hits_inactive = false;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      const double iou = rotated_iou(dets[d].box, gts[g].box);
      if (iou < iou_thresh) {
        continue;
      }
      if (!active(gts[g])) {
        hits_inactive = true;
        continue;
      }
      if (!taken[g] && iou > best_iou) {
        best_iou = iou;
        best = g;
      }
    }
    if (best < gts.size()) {
      taken[best] = true;
      result.outcomes.push_back({dets[d].score, true});
    } else if (!hits_inactive) {
      result.outcomes.push_back({dets[d].score, false});
    }
  }
  std::size_t matched = 0;
  for (std::size_t g = 0; g < gts.size(); ++g) {
    matched += (taken[g] && active(gts[g])) ? 1 : 0;
  }
  result.unmatched_gt = result.n_gt - matched;
  return result;
}

std::vector<double> recall_positions(RecallVariant variant)
{
  std::vector<double> r;
  for (int i = variant == RecallVariant::R41 ? 0 : 1; i <= 40; ++i) {
    r.push_back(static_cast<double>(i) / 40.0);
  }
  return r;
}

APResult average_precision(std::span<const ScoredOutcome> outcomes, std::size_t n_gt, RecallVariant variant)
{
  if (n_gt == 0) {
    throw NoGroundTruth("average precision needs at least one ground truth");
  }
  std::vector<ScoredOutcome> sorted(outcomes.begin(), outcomes.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const ScoredOutcome & a, const ScoredOutcome & b) {
    return a.score > b.score;
  });

  // One operating point per distinct score: ties enter together.
  std::vector<double> op_recall;
  std::vector<double> op_precision;
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    (sorted[i].tp ? tp : fp) += 1;
    if (i + 1 == sorted.size() || sorted[i + 1].score != sorted[i].score) {
      op_recall.push_back(static_cast<double>(tp) / static_cast<double>(n_gt));
      op_precision.push_back(static_cast<double>(tp) / static_cast<double>(tp + fp));
    }
  }
  // Right-max envelope: best precision at any operating point at or beyond.
  for (std::size_t i = op_precision.size(); i-- > 1;) {
    op_precision[i - 1] = std::max(op_precision[i - 1], op_precision[i]);
  }

  APResult res;
  res.variant = variant;
  res.recalls = recall_positions(variant);
  res.precisions.resize(res.recalls.size(), 0.0);
  std::size_t k = 0;
  // Recall positions are compared with a small tolerance so that e.g. 3/3 reaches r = 1.
  constexpr double eps = 1e-12;
  for (std::size_t i = 0; i < res.recalls.size(); ++i) {
    while (k < op_recall.size() && op_recall[k] + eps < res.recalls[i]) {
      ++k;
    }
    res.precisions[i] = k < op_recall.size() ? op_precision[k] : 0.0;
  }
  res.ap = std::accumulate(res.precisions.begin(), res.precisions.end(), 0.0) /
           static_cast<double>(res.precisions.size());
  res.tp = tp;
  res.fp = fp;
  res.fn = n_gt - std::min(n_gt, tp);
  return res;
}

APResult evaluate_frames(
  std::span<const FrameEval> frames, Difficulty level, RecallVariant variant, double iou_thresh)
{
  std::vector<ScoredOutcome> pooled;
  std::size_t n_gt = 0;
  for (const auto & f : frames) {
    auto m = match_detections(f.detections, f.ground_truth, iou_thresh, level);
    pooled.insert(pooled.end(), m.outcomes.begin(), m.outcomes.end());
    n_gt += m.n_gt;
  }
  return average_precision(pooled, n_gt, variant);
}

}  // namespace bevlu
