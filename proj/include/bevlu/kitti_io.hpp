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

#ifndef BEVLU__KITTI_IO_HPP_
#define BEVLU__KITTI_IO_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bevlu/geometry.hpp"

namespace bevlu
{

struct RawPoint
{
  float x{0.0F};
  float y{0.0F};
  float z{0.0F};
  float intensity{0.0F};

  friend bool operator==(const RawPoint &, const RawPoint &) = default;
};

enum class Difficulty { Easy = 0, Moderate = 1, Hard = 2, Ignored = 3 };

const char * to_string(Difficulty d);
Difficulty difficulty_from_string(std::string_view s);

/// Rectification and velodyne-to-camera transforms of one frame.
struct Calibration
{
  std::array<double, 9> r0_rect{1, 0, 0, 0, 1, 0, 0, 0, 1};
  std::array<double, 12> tr_velo_to_cam{0, -1, 0, 0, 0, 0, -1, 0, 1, 0, 0, 0};

  /// Rectified camera coordinates to LiDAR coordinates.
  std::array<double, 3> rect_to_velo(const std::array<double, 3> & p) const;
};

/// Parses "key: v1 v2 ..." calibration text. Throws CalibrationError when
/// R0_rect or Tr_velo_to_cam is missing or has the wrong arity.
Calibration parse_calibration(std::string_view text);

struct LabeledObject
{
  std::string class_name;
  double truncation{0.0};
  int occlusion{0};
  double alpha{0.0};
  std::array<double, 4> bbox2d{};  // left, top, right, bottom in pixels
  double bbox2d_height{0.0};
  BoxBEV box;                      // LiDAR frame
  double z_center{0.0};
  double height{0.0};
  bool ignore{false};              // DontCare regions
};

/// One object per line, 15 whitespace-separated fields in devkit order:
/// type, truncated, occluded, alpha, bbox(4), dimensions h w l, location x y z (camera), rotation_y.
/// Throws MalformedLine on wrong arity or a non-numeric field.
std::vector<LabeledObject> parse_label_file(std::string_view text, const Calibration & calib);

/// Little-endian float32 quadruples (x, y, z, intensity). Throws TruncatedFile.
std::vector<RawPoint> load_point_cloud(std::span<const std::byte> bytes);
std::vector<std::byte> serialize_point_cloud(std::span<const RawPoint> points);

struct CropRange
{
  double x_lo{0.0};
  double x_hi{70.0};
  double y_lo{-40.0};
  double y_hi{40.0};
  double z_lo{0.0};
  double z_hi{2.5};
  // Added to LiDAR z before the z window is applied (sensor mounting height).
  double z_offset{2.5};
  double resolution{0.1};

  void validate() const;
  std::size_t cells_x() const;
  std::size_t cells_y() const;
};

/// Keeps points with every coordinate in its half-open window; order preserved.
std::vector<RawPoint> crop_to_range(std::span<const RawPoint> points, const CropRange & r);

inline constexpr double kDefaultAssociationMargin = 0.2;

PointSetBEV associate_points_to_box(
  const LabeledObject & obj, std::span<const RawPoint> points,
  double margin = kDefaultAssociationMargin);

Difficulty difficulty_of(const LabeledObject & obj);

/// One zero-padded frame ID per line; blank lines skipped.
std::vector<std::string> parse_frame_ids(std::string_view text);

}  // namespace bevlu

#endif  // BEVLU__KITTI_IO_HPP_
