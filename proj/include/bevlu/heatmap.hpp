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

#ifndef BEVLU__HEATMAP_HPP_
#define BEVLU__HEATMAP_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bevlu/geometry.hpp"
#include "bevlu/kitti_io.hpp"
#include "bevlu/label_uncertainty.hpp"

namespace bevlu
{

/// Probability mass per BEV cell over a crop range; row-major in x, then y.
struct DensityGrid
{
  CropRange range;
  std::size_t nx{0};
  std::size_t ny{0};
  std::vector<double> mass;

  double & at(std::size_t ix, std::size_t iy) { return mass[ix * ny + iy]; }
  double at(std::size_t ix, std::size_t iy) const { return mass[ix * ny + iy]; }
  Vec2 cell_center(std::size_t ix, std::size_t iy) const;
};

/// 2x5 Jacobian of corner k (box_corners order) w.r.t. (cx, cy, l, w, theta).
Eigen::Matrix<double, 2, 5> corner_jacobian(const BoxBEV & b, std::size_t k);

/// Linearized Gaussian of each corner under the label covariance.
struct CornerGaussian
{
  Vec2 mean;
  Eigen::Matrix2d cov;
};
std::array<CornerGaussian, 4> corner_gaussians(const BoxBEV & label, const Matrix5d & cov);

/// Equal-weight mixture of the corner Gaussians (or a single one), integrated
/// by the cell-center rule. Cells farther than 6 sigma from a corner are skipped.
DensityGrid render_corner_density(
  const BoxBEV & label, const Matrix5d & cov, const CropRange & range,
  std::optional<std::size_t> corner = std::nullopt);

struct GridMoments
{
  double total{0.0};
  Vec2 mean;
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
};
GridMoments grid_moments(const DensityGrid & g);

/// Binary 8-bit graymap, rows from far x to near x, columns from +y to -y,
/// scaled to the peak mass; observed points overdrawn at 255.
std::string to_pgm(const DensityGrid & g, const PointSetBEV & points);

/// "ix,iy,x,y,mass" for every cell with mass >= min_mass, in row-major order.
std::string to_csv(const DensityGrid & g, double min_mass = 1e-12);

}  // namespace bevlu

#endif  // BEVLU__HEATMAP_HPP_
