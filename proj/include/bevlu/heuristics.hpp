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

#ifndef BEVLU__HEURISTICS_HPP_
#define BEVLU__HEURISTICS_HPP_

#include <cstddef>

#include "bevlu/common.hpp"
#include "bevlu/geometry.hpp"

namespace bevlu
{

/// Bounds and log-count anchors shared by the scalar label-quality heuristics.
struct HeuristicConfig
{
  double var_min{1e-3};
  double var_max{0.25};
  double m_min{5.0};
  double m_max{5000.0};

  void validate() const;
};

/// Log-linear map from point count to variance: m_min (or fewer) -> var_max, m_max -> var_min.
double variance_from_point_count(std::size_t num_points, const HeuristicConfig & cfg);

/// var_min + (1 - IoU(hull, box)) * (var_max - var_min); var_max for a degenerate hull.
double variance_from_convex_hull(const BoxBEV & label, const PointSetBEV & obs, const HeuristicConfig & cfg);

/// Constant variance for all five label parameters. Throws OutOfRange outside [kVarMin, kVarMax].
LabelVector fixed_variance(double sigma2);

/// Broadcasts a scalar heuristic variance to the five label parameters.
inline LabelVector broadcast_variance(double v) { return {v, v, v, v, v}; }

}  // namespace bevlu

#endif  // BEVLU__HEURISTICS_HPP_
