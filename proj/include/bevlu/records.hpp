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

#ifndef BEVLU__RECORDS_HPP_
#define BEVLU__RECORDS_HPP_

#include <json.hpp>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bevlu/encoding.hpp"
#include "bevlu/evaluation.hpp"
#include "bevlu/geometry.hpp"
#include "bevlu/kitti_io.hpp"

namespace bevlu
{

// Schema tags written into every record; bump the suffix on incompatible changes.
inline constexpr std::string_view kObjectSchema = "bevlu.object/1";
inline constexpr std::string_view kUncertaintySchema = "bevlu.uncertainty/1";
inline constexpr std::string_view kDetectionSchema = "bevlu.detection/1";
inline constexpr std::string_view kPrCurveSchema = "bevlu.prcurve/1";
inline constexpr std::string_view kManifestSchema = "bevlu.manifest/1";

/// One labeled object with its associated BEV points; shared by KITTI and synthetic data.
struct ObjectRecord
{
  std::string frame;
  std::size_t index{0};
  std::string class_name{"Car"};
  Difficulty difficulty{Difficulty::Ignored};
  BoxBEV label;
  std::optional<BoxBEV> truth;  // synthetic data only
  PointSetBEV points;
};

struct UncertaintyRecord
{
  std::string frame;
  std::size_t index{0};
  std::string method;
  std::size_t num_points{0};
  LabelVector mean{};
  LabelVector var{};
  EncodedVector encoded_var{};
};

struct DetectionRecord
{
  std::string frame;
  Detection detection;
};

nlohmann::json to_json(const ObjectRecord & r);
nlohmann::json to_json(const UncertaintyRecord & r);
nlohmann::json to_json(const DetectionRecord & r);

/// Throw MalformedLine (1-based line numbers) on schema violations.
ObjectRecord object_from_json(const nlohmann::json & j, std::size_t line_no);
UncertaintyRecord uncertainty_from_json(const nlohmann::json & j, std::size_t line_no);
DetectionRecord detection_from_json(const nlohmann::json & j, std::size_t line_no);

/// Line-delimited JSON: one compact object per line.
std::string to_jsonl(const std::vector<nlohmann::json> & records);
std::vector<nlohmann::json> parse_jsonl(std::string_view text);

std::vector<ObjectRecord> parse_object_records(std::string_view text);
std::vector<UncertaintyRecord> parse_uncertainty_records(std::string_view text);
std::vector<DetectionRecord> parse_detection_records(std::string_view text);

/// One "point" record per recall position followed by one "ap" record.
std::vector<nlohmann::json> pr_curve_records(
  const APResult & ap, const std::string & method, std::optional<std::size_t> seed, Difficulty level);

}  // namespace bevlu

#endif  // BEVLU__RECORDS_HPP_
