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

#ifndef BEVLU__SCENE_HPP_
#define BEVLU__SCENE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bevlu/geometry.hpp"
#include "bevlu/kitti_io.hpp"

namespace bevlu
{

/// Label noise std per parameter at zero visibility; scaled by (1 - coverage).
/// Position noise is expressed along / across the true heading.
struct CorruptionModel
{
  double along{0.30};
  double across{0.12};
  double length{0.30};
  double width{0.10};
  double heading{0.08};
};

struct SceneConfig
{
  int min_objects{6};
  int max_objects{14};
  double length_mean{3.9};
  double length_std{0.25};
  double width_mean{1.65};
  double width_std{0.10};
  double x_min{4.0};
  double x_max{45.0};
  double y_min{-20.0};
  double y_max{20.0};
  double heading_max{0.5};  // headings uniform in [-heading_max, heading_max]
  double angular_resolution{0.003};  // rad per beam
  double fov_min{-1.5707963267948966};
  double fov_max{1.5707963267948966};
  double max_range{70.0};
  double range_noise_std{0.02};
  CorruptionModel corruption;
  // Synthetic difficulty thresholds (point count, visible coverage).
  std::size_t easy_min_points{40};
  double easy_min_coverage{0.6};
  std::size_t moderate_min_points{15};
  double moderate_min_coverage{0.3};
  std::size_t hard_min_points{5};
  std::uint64_t seed{0};

  void validate() const;
};

struct SceneObject
{
  BoxBEV truth;
  BoxBEV label;
  PointSetBEV points;
  std::array<double, 4> edge_visibility{};  // left, rear, right, front (perimeter order)
  double coverage{0.0};                     // visible perimeter / (l + w), in [0, 1]
  Difficulty difficulty{Difficulty::Ignored};
};

struct Scene
{
  std::vector<SceneObject> objects;
};

struct RayHit
{
  double range{0.0};
  std::size_t object{0};
  std::size_t edge{0};
};

/// First perimeter intersection of the ray from the origin along `angle`.
std::optional<RayHit> cast_ray(std::span<const BoxBEV> boxes, double angle, double max_range);

/// Places boxes, ray-casts a single-layer scan from the origin, measures per-edge
/// visibility and corrupts labels in proportion to (1 - coverage). Deterministic per cfg.seed.
Scene generate_scene(const SceneConfig & cfg);

/// Ray-casts a fixed set of boxes (no placement, no corruption-free labels changed).
Scene scan_boxes(const SceneConfig & cfg, std::span<const BoxBEV> boxes);

Difficulty synthetic_difficulty(std::size_t num_points, double coverage, const SceneConfig & cfg);

}  // namespace bevlu

#endif  // BEVLU__SCENE_HPP_
