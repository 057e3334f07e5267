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

#include "bevlu/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace bevlu
{

BoxBEV BoxBEV::make(double cx, double cy, double l, double w, double theta)
{
  if (!(l > 0.0) || !(w > 0.0)) {
    throw std::invalid_argument("BoxBEV extents must be positive");
  }
  if (!std::isfinite(cx) || !std::isfinite(cy) || !std::isfinite(l) || !std::isfinite(w) ||
      !std::isfinite(theta))
  {
    throw std::invalid_argument("BoxBEV fields must be finite");
  }
  return {cx, cy, l, w, normalize_angle(theta)};
}

double Polygon2D::signed_area() const
{
  const std::size_t n = vertices.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += cross(vertices[i], vertices[(i + 1) % n]);
  }
  return 0.5 * acc;
}

Vec2 to_box_frame(const BoxBEV & b, Vec2 p)
{
  const double c = std::cos(b.theta);
  const double s = std::sin(b.theta);
  const Vec2 d = p - b.center();
  return {c * d.x + s * d.y, -s * d.x + c * d.y};
}

Vec2 from_box_frame(const BoxBEV & b, Vec2 local)
{
  const double c = std::cos(b.theta);
  const double s = std::sin(b.theta);
  return {b.cx + c * local.x - s * local.y, b.cy + s * local.x + c * local.y};
}

Polygon2D box_corners(const BoxBEV & b)
{
  const double hl = 0.5 * b.l;
  const double hw = 0.5 * b.w;
  return Polygon2D{{
    from_box_frame(b, {hl, hw}),
    from_box_frame(b, {-hl, hw}),
    from_box_frame(b, {-hl, -hw}),
    from_box_frame(b, {hl, -hw}),
  }};
}

namespace
{

// Sutherland-Hodgman: clip `subject` against the half-plane left of edge (a, b).
std::vector<Vec2> clip_half_plane(const std::vector<Vec2> & subject, Vec2 a, Vec2 b)
{
  std::vector<Vec2> out;
  out.reserve(subject.size() + 2);
  const Vec2 edge = b - a;
  const std::size_t n = subject.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = subject[i];
    const Vec2 q = subject[(i + 1) % n];
    const double sp = cross(edge, p - a);
    const double sq = cross(edge, q - a);
    if (sp >= 0.0) {
      out.push_back(p);
    }
    if ((sp >= 0.0) != (sq >= 0.0)) {
      const double t = sp / (sp - sq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

}  // namespace

double convex_intersection_area(const Polygon2D & a, const Polygon2D & b)
{
  std::vector<Vec2> clipped = a.vertices;
  const std::size_t m = b.vertices.size();
  for (std::size_t i = 0; i < m && !clipped.empty(); ++i) {
    clipped = clip_half_plane(clipped, b.vertices[i], b.vertices[(i + 1) % m]);
  }
  if (clipped.size() < 3) {
    return 0.0;
  }
  return std::max(0.0, Polygon2D{std::move(clipped)}.signed_area());
}

double convex_polygon_iou(const Polygon2D & a, const Polygon2D & b)
{
  const double inter = convex_intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  if (!(uni > 0.0)) {
    return 0.0;
  }
  return std::clamp(inter / uni, 0.0, 1.0);
}

double rotated_iou(const BoxBEV & a, const BoxBEV & b)
{
  // Canonical argument order makes the floating-point result exactly symmetric.
  const auto key = [](const BoxBEV & x) { return std::tie(x.cx, x.cy, x.l, x.w, x.theta); };
  const bool swap = key(b) < key(a);
  const BoxBEV & first = swap ? b : a;
  const BoxBEV & second = swap ? a : b;
  const double reach = 0.5 * (std::hypot(a.l, a.w) + std::hypot(b.l, b.w));
  if (norm(first.center() - second.center()) > reach) {
    return 0.0;
  }
  return convex_polygon_iou(box_corners(first), box_corners(second));
}

Polygon2D convex_hull(std::span<const Vec2> points)
{
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Vec2 p, Vec2 q) {
    return p.x < q.x || (p.x == q.x && p.y < q.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) {
    throw DegenerateInput("convex hull needs at least 3 distinct points");
  }
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Vec2 p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) {
      --k;
    }
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    const Vec2 p = pts[i];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) {
      --k;
    }
    hull[k++] = p;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) {
    throw DegenerateInput("convex hull input is collinear");
  }
  return Polygon2D{std::move(hull)};
}

std::vector<std::size_t> points_in_box(const BoxBEV & b, std::span<const Vec2> points, double margin)
{
  if (margin < 0.0) {
    throw std::invalid_argument("margin must be non-negative");
  }
  const double hl = 0.5 * b.l + margin;
  const double hw = 0.5 * b.w + margin;
  std::vector<std::size_t> inside;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec2 local = to_box_frame(b, points[i]);
    if (std::abs(local.x) <= hl && std::abs(local.y) <= hw) {
      inside.push_back(i);
    }
  }
  return inside;
}

void sample_perimeter_points_into(const BoxBEV & b, std::span<Vec2> out)
{
  const std::size_t count = out.size();
  const double hl = 0.5 * b.l;
  const double hw = 0.5 * b.w;
  const double perimeter = 2.0 * (b.l + b.w);
  const double c = std::cos(b.theta);
  const double s = std::sin(b.theta);
  for (std::size_t j = 0; j < count; ++j) {
    double d = (static_cast<double>(j) + 0.5) / static_cast<double>(count) * perimeter;
    Vec2 local;
    if (d < b.l) {
      local = {hl - d, hw};  // left side, front to rear
    } else if ((d -= b.l) < b.w) {
      local = {-hl, hw - d};  // rear
    } else if ((d -= b.w) < b.l) {
      local = {-hl + d, -hw};  // right side, rear to front
    } else {
      d -= b.l;
      local = {hl, -hw + d};  // front
    }
    out[j] = {b.cx + c * local.x - s * local.y, b.cy + s * local.x + c * local.y};
  }
}

std::vector<Vec2> sample_perimeter_points(const BoxBEV & b, std::size_t count)
{
  if (count < 4) {
    throw std::invalid_argument("perimeter sampling needs at least 4 points");
  }
  std::vector<Vec2> out(count);
  sample_perimeter_points_into(b, out);
  return out;
}

double distance_to_boundary(const BoxBEV & b, Vec2 p)
{
  const Vec2 local = to_box_frame(b, p);
  const double dx = std::abs(local.x) - 0.5 * b.l;
  const double dy = std::abs(local.y) - 0.5 * b.w;
  if (dx <= 0.0 && dy <= 0.0) {
    return -std::max(dx, dy);
  }
  return std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
}

double signed_distance_to_polygon(const Polygon2D & poly, Vec2 p)
{
  const std::size_t n = poly.vertices.size();
  double best = std::numeric_limits<double>::infinity();
  bool inside = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly.vertices[i];
    const Vec2 b = poly.vertices[(i + 1) % n];
    const Vec2 e = b - a;
    const double t = std::clamp(dot(p - a, e) / dot(e, e), 0.0, 1.0);
    best = std::min(best, norm(p - (a + t * e)));
    if (cross(e, p - a) < 0.0) {
      inside = false;
    }
  }
  return inside ? -best : best;
}

}  // namespace bevlu
