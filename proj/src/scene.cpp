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

#include "bevlu/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bevlu/rng.hpp"

namespace bevlu
{

namespace
{

constexpr std::size_t kVisibilitySamplesPerEdge = 64;

std::array<std::pair<Vec2, Vec2>, 4> edges_of(const BoxBEV & b)
{
  const auto c = box_corners(b).vertices;
  // Same order as perimeter sampling: left, rear, right, front.
  return {{{c[0], c[1]}, {c[1], c[2]}, {c[2], c[3]}, {c[3], c[0]}}};
}

double edge_length(const BoxBEV & b, std::size_t edge) { return edge % 2 == 0 ? b.l : b.w; }

}  // namespace

void SceneConfig::validate() const
{
  if (!(angular_resolution > 0.0)) {
    throw std::invalid_argument("angular resolution must be positive");
  }
  if (length_std < 0.0 || width_std < 0.0 || range_noise_std < 0.0 || corruption.along < 0.0 ||
      corruption.across < 0.0 || corruption.length < 0.0 || corruption.width < 0.0 ||
      corruption.heading < 0.0)
  {
    throw std::invalid_argument("standard deviations must be non-negative");
  }
  if (min_objects < 0 || max_objects < min_objects) {
    throw std::invalid_argument("object count range is empty");
  }
  if (!(x_min < x_max) || !(y_min < y_max) || !(fov_min < fov_max)) {
    throw std::invalid_argument("scene region or field of view is empty");
  }
}

std::optional<RayHit> cast_ray(std::span<const BoxBEV> boxes, double angle, double max_range)
{
  const Vec2 d{std::cos(angle), std::sin(angle)};
  std::optional<RayHit> best;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto edges = edges_of(boxes[i]);
    for (std::size_t e = 0; e < 4; ++e) {
      const Vec2 a = edges[e].first;
      const Vec2 seg = edges[e].second - a;
      const double denom = cross(d, seg);
      if (denom == 0.0) {
        continue;
      }
      const double t = cross(a, seg) / denom;
      const double u = cross(a, d) / denom;
      if (t > 0.0 && t <= max_range && u >= 0.0 && u <= 1.0 && (!best || t < best->range)) {
        best = RayHit{t, i, e};
      }
    }
  }
  return best;
}

Difficulty synthetic_difficulty(std::size_t num_points, double coverage, const SceneConfig & cfg)
{
  if (num_points >= cfg.easy_min_points && coverage >= cfg.easy_min_coverage) {
    return Difficulty::Easy;
  }
  if (num_points >= cfg.moderate_min_points && coverage >= cfg.moderate_min_coverage) {
    return Difficulty::Moderate;
  }
  if (num_points >= cfg.hard_min_points) {
    return Difficulty::Hard;
  }
  return Difficulty::Ignored;
}

Scene scan_boxes(const SceneConfig & cfg, std::span<const BoxBEV> boxes)
{
  cfg.validate();
  Rng rng(derive_seed(cfg.seed, 0x5ca7));
  Scene scene;
  scene.objects.resize(boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    scene.objects[i].truth = boxes[i];
    scene.objects[i].label = boxes[i];
  }

  const auto beams = static_cast<std::size_t>(std::floor((cfg.fov_max - cfg.fov_min) / cfg.angular_resolution)) + 1;
  for (std::size_t k = 0; k < beams; ++k) {
    const double angle = cfg.fov_min + static_cast<double>(k) * cfg.angular_resolution;
    const auto hit = cast_ray(boxes, angle, cfg.max_range);
    if (!hit) {
      continue;
    }
    const double range = hit->range + (cfg.range_noise_std > 0.0 ? cfg.range_noise_std * rng.normal() : 0.0);
    scene.objects[hit->object].points.points.push_back({range * std::cos(angle), range * std::sin(angle)});
  }

  // Visibility: an edge sample is visible when the first hit toward it is that sample.
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    auto & obj = scene.objects[i];
    const auto edges = edges_of(boxes[i]);
    double visible_length = 0.0;
    for (std::size_t e = 0; e < 4; ++e) {
      std::size_t seen = 0;
      for (std::size_t s = 0; s < kVisibilitySamplesPerEdge; ++s) {
        const double u = (static_cast<double>(s) + 0.5) / static_cast<double>(kVisibilitySamplesPerEdge);
        const Vec2 p = edges[e].first + u * (edges[e].second - edges[e].first);
        const double angle = std::atan2(p.y, p.x);
        const double dist = norm(p);
        if (angle < cfg.fov_min || angle > cfg.fov_max || dist > cfg.max_range) {
          continue;
        }
        const auto hit = cast_ray(boxes, angle, cfg.max_range);
        if (hit && hit->object == i && hit->edge == e && std::abs(hit->range - dist) <= 1e-6 * (1.0 + dist)) {
          ++seen;
        }
      }
      obj.edge_visibility[e] = static_cast<double>(seen) / static_cast<double>(kVisibilitySamplesPerEdge);
      visible_length += obj.edge_visibility[e] * edge_length(boxes[i], e);
    }
    obj.coverage = std::clamp(visible_length / (boxes[i].l + boxes[i].w), 0.0, 1.0);
    obj.difficulty = synthetic_difficulty(obj.points.size(), obj.coverage, cfg);
  }
  return scene;
}

Scene generate_scene(const SceneConfig & cfg)
{
  cfg.validate();
  Rng rng(derive_seed(cfg.seed, 0x0b1ec7));
  const int n = rng.uniform_int(cfg.min_objects, cfg.max_objects);
  std::vector<BoxBEV> boxes;
  constexpr int kMaxAttempts = 200;
  constexpr double kClearance = 0.5;
  for (int attempt = 0; static_cast<int>(boxes.size()) < n && attempt < kMaxAttempts * n; ++attempt) {
    const double l = std::max(2.0, rng.normal(cfg.length_mean, cfg.length_std));
    const double w = std::max(1.0, rng.normal(cfg.width_mean, cfg.width_std));
    const BoxBEV b = BoxBEV::make(
      rng.uniform(cfg.x_min, cfg.x_max), rng.uniform(cfg.y_min, cfg.y_max), l, w,
      rng.uniform(-cfg.heading_max, cfg.heading_max));
    if (norm(b.center()) < 0.5 * std::hypot(l, w) + kClearance) {
      continue;
    }
    const BoxBEV grown{b.cx, b.cy, b.l + 2.0 * kClearance, b.w + 2.0 * kClearance, b.theta};
    const bool collides = std::any_of(boxes.begin(), boxes.end(), [&](const BoxBEV & o) {
      return rotated_iou(grown, o) > 0.0;
    });
    if (!collides) {
      boxes.push_back(b);
    }
  }

  Scene scene = scan_boxes(cfg, boxes);

  const auto & cm = cfg.corruption;
  for (auto & obj : scene.objects) {
    const double scale = 1.0 - obj.coverage;
    const BoxBEV & t = obj.truth;
    const double d_along = scale * cm.along * rng.normal();
    const double d_across = scale * cm.across * rng.normal();
    const double d_l = scale * cm.length * rng.normal();
    const double d_w = scale * cm.width * rng.normal();
    const double d_theta = scale * cm.heading * rng.normal();
    const double c = std::cos(t.theta);
    const double s = std::sin(t.theta);
    obj.label = BoxBEV::make(
      t.cx + c * d_along - s * d_across, t.cy + s * d_along + c * d_across, std::max(0.5, t.l + d_l),
      std::max(0.3, t.w + d_w), t.theta + d_theta);
  }
  return scene;
}

}  // namespace bevlu
