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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "bevlu/heatmap.hpp"

namespace bevlu
{
namespace
{

Matrix5d diagonal(const LabelVector & v)
{
  Matrix5d m = Matrix5d::Zero();
  for (std::size_t a = 0; a < kLabelDim; ++a) {
    m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = v[a];
  }
  return m;
}

PointSetBEV rear_edge(const BoxBEV & b, std::size_t n)
{
  PointSetBEV out;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    out.points.push_back(from_box_frame(b, {-0.5 * b.l, 0.5 * b.w - t * b.w}));
  }
  return out;
}

TEST(Grid, CellCountMatchesResolution)
{
  const CropRange crop;
  const DensityGrid g = render_corner_density(BoxBEV::make(20, 0, 4, 1.8, 0), diagonal({0.01, 0.01, 0.01, 0.01, 0.001}), crop);
  EXPECT_EQ(g.nx, 700U);
  EXPECT_EQ(g.ny, 800U);
  EXPECT_EQ(g.mass.size(), 700U * 800U);
  const Vec2 c = g.cell_center(0, 0);
  EXPECT_NEAR(c.x, 0.05, 1e-12);
  EXPECT_NEAR(c.y, -39.95, 1e-12);
  CropRange small;
  small.x_lo = 10;
  small.x_hi = 12.5;
  small.y_lo = -1;
  small.y_hi = 1;
  EXPECT_EQ(small.cells_x(), 25U);
  EXPECT_EQ(small.cells_y(), 20U);
}

TEST(Grid, CornerJacobianMatchesFiniteDifferences)
{
  const BoxBEV b = BoxBEV::make(7, -2, 4.2, 1.7, 0.8);
  const double h = 1e-6;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto J = corner_jacobian(b, k);
    for (std::size_t a = 0; a < kLabelDim; ++a) {
      LabelVector up = b.as_vector();
      LabelVector down = b.as_vector();
      up[a] += h;
      down[a] -= h;
      const Vec2 pu = box_corners(BoxBEV::from_vector(up)).vertices[k];
      const Vec2 pd = box_corners(BoxBEV::from_vector(down)).vertices[k];
      EXPECT_NEAR(J(0, static_cast<Eigen::Index>(a)), (pu.x - pd.x) / (2 * h), 1e-7);
      EXPECT_NEAR(J(1, static_cast<Eigen::Index>(a)), (pu.y - pd.y) / (2 * h), 1e-7);
    }
  }
}

TEST(Grid, NoEvidenceGivesPriorBlurAtEveryCorner)
{
  const GenerativeModelConfig cfg;
  const BoxBEV b = BoxBEV::make(25, 4, 4, 1.8, 0.4);
  const LabelPosterior post = laplace_posterior(b, PointSetBEV{}, cfg);
  const CropRange crop;
  const DensityGrid all = render_corner_density(b, post.covariance, crop);
  EXPECT_NEAR(grid_moments(all).total, 1.0, 1e-3);
  const auto expected = corner_gaussians(b, diagonal(cfg.prior_var));
  const double floor = crop.resolution * crop.resolution / 12.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const GridMoments m = grid_moments(render_corner_density(b, post.covariance, crop, k));
    EXPECT_NEAR(m.total, 1.0, 1e-3);
    EXPECT_NEAR(m.mean.x, expected[k].mean.x, 1e-3);
    EXPECT_NEAR(m.mean.y, expected[k].mean.y, 1e-3);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        const double want = expected[k].cov(r, c) + (r == c ? floor : 0.0);
        EXPECT_NEAR(m.cov(r, c), want, 0.03 * expected[k].cov.trace()) << "corner " << k;
      }
    }
  }
}

TEST(Grid, RearEdgeOnlyBlursAlongHeading)
{
  const GenerativeModelConfig cfg;
  const BoxBEV b = BoxBEV::make(18, -3, 4.0, 1.7, 0.3);
  const LabelPosterior post = laplace_posterior(b, rear_edge(b, 50), cfg);
  const CropRange crop;
  const Eigen::Vector2d along(std::cos(b.theta), std::sin(b.theta));
  const Eigen::Vector2d across(-std::sin(b.theta), std::cos(b.theta));
  double var_along = 0.0;
  double var_across = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const GridMoments m = grid_moments(render_corner_density(b, post.covariance, crop, k));
    var_along += along.dot(m.cov * along);
    var_across += across.dot(m.cov * across);
  }
  EXPECT_GT(var_along, 2.0 * var_across);
}

TEST(Export, GraymapLayout)
{
  CropRange crop;
  crop.x_lo = 10;
  crop.x_hi = 12;
  crop.y_lo = -1;
  crop.y_hi = 2;
  DensityGrid g;
  g.range = crop;
  g.nx = crop.cells_x();
  g.ny = crop.cells_y();
  g.mass.assign(g.nx * g.ny, 0.0);
  g.at(0, 0) = 2.0;                  // near x, most negative y
  g.at(g.nx - 1, g.ny - 1) = 1.0;    // far x, most positive y
  const PointSetBEV pts{{{11.05, 0.05}, {50.0, 0.0}}};
  const std::string pgm = to_pgm(g, pts);
  const std::string header = "P5\n30 20\n255\n";
  ASSERT_EQ(pgm.substr(0, header.size()), header);
  ASSERT_EQ(pgm.size(), header.size() + 600);
  const auto px = [&](std::size_t row, std::size_t col) { return static_cast<unsigned char>(pgm[header.size() + row * 30 + col]); };
  EXPECT_EQ(px(19, 29), 254);  // bottom-right
  EXPECT_EQ(px(0, 0), 127);    // top-left
  EXPECT_EQ(px(19 - 10, 29 - 10), 255);
  EXPECT_EQ(px(5, 5), 0);
}

TEST(Export, SparseCsv)
{
  CropRange crop;
  crop.x_lo = 0;
  crop.x_hi = 1;
  crop.y_lo = 0;
  crop.y_hi = 1;
  DensityGrid g;
  g.range = crop;
  g.nx = crop.cells_x();
  g.ny = crop.cells_y();
  g.mass.assign(g.nx * g.ny, 0.0);
  g.at(3, 4) = 0.125;
  g.at(9, 9) = 1e-15;
  EXPECT_EQ(to_csv(g), "ix,iy,x,y,mass\n3,4,0.35000000000000003,0.45000000000000001,0.125\n");
  const std::string dense = to_csv(g, 0.0);
  EXPECT_EQ(std::count(dense.begin(), dense.end(), '\n'), 3);
}

}  // namespace
}  // namespace bevlu
