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

#include "bevlu/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bevlu
{

void HeuristicConfig::validate() const
{
  if (!(var_min > 0.0) || !(var_min < var_max)) {
    throw std::invalid_argument("heuristic variance bounds need 0 < var_min < var_max");
  }
  if (!(m_min >= 1.0) || !(m_min < m_max)) {
    throw std::invalid_argument("heuristic count anchors need 1 <= m_min < m_max");
  }
}

double variance_from_point_count(std::size_t num_points, const HeuristicConfig & cfg)
{
  cfg.validate();
  double t = 0.0;
  if (num_points > 0) {
    const double m = static_cast<double>(num_points);
    t = (std::log(m) - std::log(cfg.m_min)) / (std::log(cfg.m_max) - std::log(cfg.m_min));
    t = std::clamp(t, 0.0, 1.0);
  }
  return cfg.var_max - t * (cfg.var_max - cfg.var_min);
}

double variance_from_convex_hull(const BoxBEV & label, const PointSetBEV & obs, const HeuristicConfig & cfg)
{
  cfg.validate();
  double iou = 0.0;
  try {
    iou = convex_polygon_iou(convex_hull(obs.points), box_corners(label));
  } catch (const DegenerateInput &) {
    return cfg.var_max;
  }
  return cfg.var_min + (1.0 - iou) * (cfg.var_max - cfg.var_min);
}

LabelVector fixed_variance(double sigma2)
{
  if (!(sigma2 >= kVarMin) || !(sigma2 <= kVarMax)) {
    throw OutOfRange("fixed variance " + std::to_string(sigma2) + " outside [kVarMin, kVarMax]");
  }
  return broadcast_variance(sigma2);
}

}  // namespace bevlu
