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

#include "bevlu/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <Eigen/Dense>

namespace bevlu
{

namespace
{

constexpr std::array<double, 4> kCornerSx{1.0, -1.0, -1.0, 1.0};
constexpr std::array<double, 4> kCornerSy{1.0, 1.0, -1.0, -1.0};
constexpr double kCutoffSigmas = 6.0;

}  // namespace

Vec2 DensityGrid::cell_center(std::size_t ix, std::size_t iy) const
{
  return {
    range.x_lo + (static_cast<double>(ix) + 0.5) * range.resolution,
    range.y_lo + (static_cast<double>(iy) + 0.5) * range.resolution};
}

Eigen::Matrix<double, 2, 5> corner_jacobian(const BoxBEV & b, std::size_t k)
{
  const double c = std::cos(b.theta);
  const double s = std::sin(b.theta);
  const double u = 0.5 * kCornerSx[k] * b.l;
  const double v = 0.5 * kCornerSy[k] * b.w;
  Eigen::Matrix<double, 2, 5> j;
  j << 1.0, 0.0, 0.5 * kCornerSx[k] * c, -0.5 * kCornerSy[k] * s, -s * u - c * v,
    0.0, 1.0, 0.5 * kCornerSx[k] * s, 0.5 * kCornerSy[k] * c, c * u - s * v;
  return j;
}

std::array<CornerGaussian, 4> corner_gaussians(const BoxBEV & label, const Matrix5d & cov)
{
  const Polygon2D corners = box_corners(label);
  std::array<CornerGaussian, 4> out;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto j = corner_jacobian(label, k);
    out[k].mean = corners.vertices[k];
    out[k].cov = j * cov * j.transpose();
  }
  return out;
}

DensityGrid render_corner_density(
  const BoxBEV & label, const Matrix5d & cov, const CropRange & range, std::optional<std::size_t> corner)
{
  range.validate();
  DensityGrid g;
  g.range = range;
  g.nx = range.cells_x();
  g.ny = range.cells_y();
  g.mass.assign(g.nx * g.ny, 0.0);

  const auto gaussians = corner_gaussians(label, cov);
  const std::size_t first = corner ? *corner : 0;
  const std::size_t last = corner ? *corner + 1 : 4;
  const double weight = 1.0 / static_cast<double>(last - first);
  const double cell_area = range.resolution * range.resolution;

  for (std::size_t k = first; k < last; ++k) {
    const CornerGaussian & cg = gaussians[k];
    Eigen::Matrix2d sigma = cg.cov;
    // A cell-sized floor keeps point-like corners renderable.
    sigma += Eigen::Matrix2d::Identity() * (cell_area / 12.0);
    const Eigen::Matrix2d inv = sigma.inverse();
    const double norm = weight * cell_area / (2.0 * std::numbers::pi * std::sqrt(sigma.determinant()));
    const double rx = kCutoffSigmas * std::sqrt(sigma(0, 0));
    const double ry = kCutoffSigmas * std::sqrt(sigma(1, 1));
    const auto index = [&](double v, double lo, std::size_t n) {
      const double t = std::floor((v - lo) / range.resolution);
      return static_cast<std::size_t>(std::clamp(t, 0.0, static_cast<double>(n - 1)));
    };
    const std::size_t ix0 = index(cg.mean.x - rx, range.x_lo, g.nx);
    const std::size_t ix1 = index(cg.mean.x + rx, range.x_lo, g.nx);
    const std::size_t iy0 = index(cg.mean.y - ry, range.y_lo, g.ny);
    const std::size_t iy1 = index(cg.mean.y + ry, range.y_lo, g.ny);
    for (std::size_t ix = ix0; ix <= ix1; ++ix) {
      for (std::size_t iy = iy0; iy <= iy1; ++iy) {
        const Vec2 d = g.cell_center(ix, iy) - cg.mean;
        const Eigen::Vector2d e(d.x, d.y);
        const double q = e.dot(inv * e);
        if (q <= kCutoffSigmas * kCutoffSigmas) {
          g.at(ix, iy) += norm * std::exp(-0.5 * q);
        }
      }
    }
  }
  return g;
}

GridMoments grid_moments(const DensityGrid & g)
{
  GridMoments m;
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t ix = 0; ix < g.nx; ++ix) {
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
      const double w = g.at(ix, iy);
      if (w == 0.0) {
        continue;
      }
      const Vec2 c = g.cell_center(ix, iy);
      m.total += w;
      sx += w * c.x;
      sy += w * c.y;
    }
  }
  if (m.total <= 0.0) {
    return m;
  }
  m.mean = {sx / m.total, sy / m.total};
  for (std::size_t ix = 0; ix < g.nx; ++ix) {
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
      const double w = g.at(ix, iy);
      if (w == 0.0) {
        continue;
      }
      const Vec2 d = g.cell_center(ix, iy) - m.mean;
      m.cov(0, 0) += w * d.x * d.x;
      m.cov(0, 1) += w * d.x * d.y;
      m.cov(1, 1) += w * d.y * d.y;
    }
  }
  m.cov(1, 0) = m.cov(0, 1);
  m.cov /= m.total;
  return m;
}

std::string to_pgm(const DensityGrid & g, const PointSetBEV & points)
{
  const double peak = g.mass.empty() ? 0.0 : *std::max_element(g.mass.begin(), g.mass.end());
  const std::size_t width = g.ny;
  const std::size_t height = g.nx;
  std::string header = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  std::string out = header;
  out.resize(header.size() + width * height, '\0');
  auto pixel = [&](std::size_t ix, std::size_t iy) -> char & {
    const std::size_t row = g.nx - 1 - ix;
    const std::size_t col = g.ny - 1 - iy;
    return out[header.size() + row * width + col];
  };
  if (peak > 0.0) {
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
      for (std::size_t iy = 0; iy < g.ny; ++iy) {
        const long v = std::lround(254.0 * g.at(ix, iy) / peak);
        pixel(ix, iy) = static_cast<char>(static_cast<unsigned char>(v));
      }
    }
  }
  for (const Vec2 p : points.points) {
    const double fx = std::floor((p.x - g.range.x_lo) / g.range.resolution);
    const double fy = std::floor((p.y - g.range.y_lo) / g.range.resolution);
    if (fx < 0.0 || fy < 0.0 || fx >= static_cast<double>(g.nx) || fy >= static_cast<double>(g.ny)) {
      continue;
    }
    pixel(static_cast<std::size_t>(fx), static_cast<std::size_t>(fy)) = static_cast<char>(255);
  }
  return out;
}

std::string to_csv(const DensityGrid & g, double min_mass)
{
  std::string out = "ix,iy,x,y,mass\n";
  char line[160];
  for (std::size_t ix = 0; ix < g.nx; ++ix) {
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
      const double w = g.at(ix, iy);
      if (w < min_mass || w == 0.0) {
        continue;
      }
      const Vec2 c = g.cell_center(ix, iy);
      std::snprintf(line, sizeof(line), "%zu,%zu,%.17g,%.17g,%.17g\n", ix, iy, c.x, c.y, w);
      out += line;
    }
  }
  return out;
}

}  // namespace bevlu
