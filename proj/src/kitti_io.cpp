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

#include "bevlu/kitti_io.hpp"

#include <Eigen/Dense>

#include <bit>
#include <cctype>
#include <charconv>
#include <cstring>
#include <numbers>
#include <sstream>

namespace bevlu
{

namespace
{

std::vector<std::string_view> split_ws(std::string_view line)
{
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    if (i > start) {
      out.push_back(line.substr(start, i - start));
    }
  }
  return out;
}

std::optional<double> to_double(std::string_view tok)
{
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn && fn)
{
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    fn(++line_no, line);
    if (nl == std::string_view::npos) {
      break;
    }
    text.remove_prefix(nl + 1);
  }
}

}  // namespace

const char * to_string(Difficulty d)
{
  switch (d) {
    case Difficulty::Easy:
      return "Easy";
    case Difficulty::Moderate:
      return "Moderate";
    case Difficulty::Hard:
      return "Hard";
    case Difficulty::Ignored:
      return "Ignored";
  }
  return "Ignored";
}

Difficulty difficulty_from_string(std::string_view s)
{
  if (s == "Easy") {
    return Difficulty::Easy;
  }
  if (s == "Moderate") {
    return Difficulty::Moderate;
  }
  if (s == "Hard") {
    return Difficulty::Hard;
  }
  if (s == "Ignored") {
    return Difficulty::Ignored;
  }
  throw std::invalid_argument("unknown difficulty: " + std::string(s));
}

std::array<double, 3> Calibration::rect_to_velo(const std::array<double, 3> & p) const
{
  Eigen::Matrix3d r0;
  r0 << r0_rect[0], r0_rect[1], r0_rect[2], r0_rect[3], r0_rect[4], r0_rect[5], r0_rect[6],
    r0_rect[7], r0_rect[8];
  Eigen::Matrix4d tr = Eigen::Matrix4d::Identity();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 4; ++c) {
      tr(r, c) = tr_velo_to_cam[static_cast<std::size_t>(4 * r + c)];
    }
  }
  const Eigen::Vector3d cam = r0.inverse() * Eigen::Vector3d(p[0], p[1], p[2]);
  const Eigen::Vector4d velo = tr.inverse() * Eigen::Vector4d(cam.x(), cam.y(), cam.z(), 1.0);
  return {velo.x(), velo.y(), velo.z()};
}

Calibration parse_calibration(std::string_view text)
{
  std::optional<std::vector<double>> r0;
  std::optional<std::vector<double>> tr;
  for_each_line(text, [&](std::size_t, std::string_view line) {
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      return;
    }
    const std::string_view key = split_ws(line.substr(0, colon)).empty()
                                   ? std::string_view{}
                                   : split_ws(line.substr(0, colon)).front();
    if (key != "R0_rect" && key != "Tr_velo_to_cam") {
      return;
    }
    std::vector<double> values;
    for (const auto tok : split_ws(line.substr(colon + 1))) {
      const auto v = to_double(tok);
      if (!v) {
        throw CalibrationError("non-numeric calibration value for " + std::string(key));
      }
      values.push_back(*v);
    }
    (key == "R0_rect" ? r0 : tr) = std::move(values);
  });
  if (!r0 || r0->size() != 9) {
    throw CalibrationError("R0_rect missing or not 9 values");
  }
  if (!tr || tr->size() != 12) {
    throw CalibrationError("Tr_velo_to_cam missing or not 12 values");
  }
  Calibration calib;
  std::copy(r0->begin(), r0->end(), calib.r0_rect.begin());
  std::copy(tr->begin(), tr->end(), calib.tr_velo_to_cam.begin());
  return calib;
}

std::vector<LabeledObject> parse_label_file(std::string_view text, const Calibration & calib)
{
  std::vector<LabeledObject> objects;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    const auto tokens = split_ws(line);
    if (tokens.empty()) {
      return;
    }
    if (tokens.size() != 15) {
      throw MalformedLine(line_no, "expected 15 fields, got " + std::to_string(tokens.size()));
    }
    std::array<double, 14> v{};
    for (std::size_t i = 1; i < 15; ++i) {
      const auto d = to_double(tokens[i]);
      if (!d) {
        throw MalformedLine(line_no, "field " + std::to_string(i + 1) + " is not numeric");
      }
      v[i - 1] = *d;
    }
    LabeledObject obj;
    obj.class_name = std::string(tokens[0]);
    obj.truncation = v[0];
    obj.occlusion = static_cast<int>(v[1]);
    obj.alpha = v[2];
    obj.bbox2d = {v[3], v[4], v[5], v[6]};
    obj.bbox2d_height = v[6] - v[4];
    const double h = v[7];
    const double w = v[8];
    const double l = v[9];
    const double ry = v[13];
    obj.height = h;
    obj.ignore = obj.class_name == "DontCare";
    if (obj.ignore) {
      objects.push_back(std::move(obj));
      return;
    }
    if (obj.occlusion < 0 || obj.occlusion > 3 || static_cast<double>(obj.occlusion) != v[1]) {
      throw MalformedLine(line_no, "occlusion must be an integer in 0..3");
    }
    if (!(l > 0.0) || !(w > 0.0)) {
      throw MalformedLine(line_no, "non-positive box dimensions");
    }
    // location is the bottom center in rectified camera coordinates.
    const auto bottom = calib.rect_to_velo({v[10], v[11], v[12]});
    obj.z_center = bottom[2] + 0.5 * h;
    obj.box = BoxBEV::make(bottom[0], bottom[1], l, w, -ry - 0.5 * std::numbers::pi);
    objects.push_back(std::move(obj));
  });
  return objects;
}

std::vector<RawPoint> load_point_cloud(std::span<const std::byte> bytes)
{
  if (bytes.size() % 16 != 0) {
    throw TruncatedFile("point cloud length " + std::to_string(bytes.size()) +
                        " is not a multiple of 16");
  }
  std::vector<RawPoint> points(bytes.size() / 16);
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::array<std::uint32_t, 4> words{};
    std::memcpy(words.data(), bytes.data() + 16 * i, 16);
    if constexpr (std::endian::native == std::endian::big) {
      for (auto & word : words) {
        word = __builtin_bswap32(word);
      }
    }
    points[i] = {std::bit_cast<float>(words[0]), std::bit_cast<float>(words[1]),
                 std::bit_cast<float>(words[2]), std::bit_cast<float>(words[3])};
  }
  return points;
}

std::vector<std::byte> serialize_point_cloud(std::span<const RawPoint> points)
{
  std::vector<std::byte> out(points.size() * 16);
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::array<std::uint32_t, 4> words{
      std::bit_cast<std::uint32_t>(points[i].x), std::bit_cast<std::uint32_t>(points[i].y),
      std::bit_cast<std::uint32_t>(points[i].z), std::bit_cast<std::uint32_t>(points[i].intensity)};
    if constexpr (std::endian::native == std::endian::big) {
      for (auto & word : words) {
        word = __builtin_bswap32(word);
      }
    }
    std::memcpy(out.data() + 16 * i, words.data(), 16);
  }
  return out;
}

void CropRange::validate() const
{
  if (!(x_lo < x_hi) || !(y_lo < y_hi) || !(z_lo < z_hi)) {
    throw std::invalid_argument("crop range needs lo < hi on every axis");
  }
  if (!(resolution > 0.0)) {
    throw std::invalid_argument("crop resolution must be positive");
  }
}

std::size_t CropRange::cells_x() const
{
  return static_cast<std::size_t>(std::llround((x_hi - x_lo) / resolution));
}

std::size_t CropRange::cells_y() const
{
  return static_cast<std::size_t>(std::llround((y_hi - y_lo) / resolution));
}

std::vector<RawPoint> crop_to_range(std::span<const RawPoint> points, const CropRange & r)
{
  r.validate();
  std::vector<RawPoint> kept;
  kept.reserve(points.size());
  for (const auto & p : points) {
    const double z = static_cast<double>(p.z) + r.z_offset;
    if (p.x >= r.x_lo && p.x < r.x_hi && p.y >= r.y_lo && p.y < r.y_hi && z >= r.z_lo &&
        z < r.z_hi)
    {
      kept.push_back(p);
    }
  }
  return kept;
}

PointSetBEV associate_points_to_box(
  const LabeledObject & obj, std::span<const RawPoint> points, double margin)
{
  std::vector<Vec2> projected;
  projected.reserve(points.size());
  for (const auto & p : points) {
    projected.push_back({p.x, p.y});
  }
  PointSetBEV set;
  for (const std::size_t i : points_in_box(obj.box, projected, margin)) {
    set.points.push_back(projected[i]);
  }
  return set;
}

Difficulty difficulty_of(const LabeledObject & obj)
{
  if (obj.ignore) {
    return Difficulty::Ignored;
  }
  const double h = obj.bbox2d_height;
  if (h >= 40.0 && obj.occlusion == 0 && obj.truncation <= 0.15) {
    return Difficulty::Easy;
  }
  if (h >= 25.0 && obj.occlusion <= 1 && obj.truncation <= 0.30) {
    return Difficulty::Moderate;
  }
  if (h >= 25.0 && obj.occlusion <= 2 && obj.truncation <= 0.50) {
    return Difficulty::Hard;
  }
  return Difficulty::Ignored;
}

std::vector<std::string> parse_frame_ids(std::string_view text)
{
  std::vector<std::string> ids;
  for_each_line(text, [&](std::size_t, std::string_view line) {
    const auto tokens = split_ws(line);
    if (!tokens.empty()) {
      ids.emplace_back(tokens.front());
    }
  });
  return ids;
}

}  // namespace bevlu
