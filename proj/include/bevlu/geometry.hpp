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

#ifndef BEVLU__GEOMETRY_HPP_
#define BEVLU__GEOMETRY_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "bevlu/common.hpp"

namespace bevlu
{

/// Oriented rectangle in the LiDAR ground plane.
/// cx/cy: center (x forward, y left), l: extent along heading, w: across,
/// theta: heading counterclockwise from +x.
struct BoxBEV
{
  double cx{0.0};
  double cy{0.0};
  double l{1.0};
  double w{1.0};
  double theta{0.0};

  /// Validates extents and normalizes theta to (-pi, pi]. Throws std::invalid_argument.
  static BoxBEV make(double cx, double cy, double l, double w, double theta);

  LabelVector as_vector() const { return {cx, cy, l, w, theta}; }
  static BoxBEV from_vector(const LabelVector & v) { return {v[0], v[1], v[2], v[3], v[4]}; }

  Vec2 center() const { return {cx, cy}; }
  Vec2 heading() const { return {std::cos(theta), std::sin(theta)}; }

  friend bool operator==(const BoxBEV &, const BoxBEV &) = default;
};

/// Counterclockwise simple polygon.
struct Polygon2D
{
  std::vector<Vec2> vertices;

  double signed_area() const;
  double area() const { return std::abs(signed_area()); }
};

/// BEV projections of the LiDAR returns associated with one object.
struct PointSetBEV
{
  std::vector<Vec2> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Corners in the order front-left, rear-left, rear-right, front-right (counterclockwise).
Polygon2D box_corners(const BoxBEV & b);

/// Area of the intersection of two convex counterclockwise polygons.
double convex_intersection_area(const Polygon2D & a, const Polygon2D & b);

/// Intersection over union of two convex polygons; 0 when the union is empty.
double convex_polygon_iou(const Polygon2D & a, const Polygon2D & b);

/// Rotated bird's-eye-view IoU. Exactly symmetric in its arguments.
double rotated_iou(const BoxBEV & a, const BoxBEV & b);

/// Andrew's monotone chain. Collinear boundary points are dropped.
/// Throws DegenerateInput for fewer than 3 distinct or all-collinear points.
Polygon2D convex_hull(std::span<const Vec2> points);

/// Indices of points inside `b` dilated by `margin` on every side. Boundary counts as inside.
std::vector<std::size_t> points_in_box(const BoxBEV & b, std::span<const Vec2> points, double margin);

/// K points at arc-length offsets (j + 0.5) / K * P, counterclockwise from the front-left corner.
std::vector<Vec2> sample_perimeter_points(const BoxBEV & b, std::size_t count);

/// Same placement as sample_perimeter_points, written into a caller-owned buffer.
void sample_perimeter_points_into(const BoxBEV & b, std::span<Vec2> out);

/// Unsigned distance from p to the rectangle boundary.
double distance_to_boundary(const BoxBEV & b, Vec2 p);

/// Signed distance of p to the convex polygon boundary; negative inside.
double signed_distance_to_polygon(const Polygon2D & poly, Vec2 p);

/// Box frame coordinates of a world point.
Vec2 to_box_frame(const BoxBEV & b, Vec2 p);
Vec2 from_box_frame(const BoxBEV & b, Vec2 local);

}  // namespace bevlu

#endif  // BEVLU__GEOMETRY_HPP_
