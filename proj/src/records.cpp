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

#include "bevlu/records.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace bevlu
{

using nlohmann::json;

namespace
{

json box_json(const BoxBEV & b) { return json::array({b.cx, b.cy, b.l, b.w, b.theta}); }

template <std::size_t N>
json array_json(const std::array<double, N> & a)
{
  json out = json::array();
  for (const double v : a) {
    out.push_back(v);
  }
  return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string & why) { throw MalformedLine(line_no, why); }

const json & field(const json & j, const char * key, std::size_t line_no)
{
  if (!j.is_object() || !j.contains(key)) {
    fail(line_no, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

void expect_schema(const json & j, std::string_view schema, std::size_t line_no)
{
  const json & s = field(j, "schema", line_no);
  if (!s.is_string() || s.get<std::string>() != schema) {
    fail(line_no, "expected schema " + std::string(schema));
  }
}

std::string string_field(const json & j, const char * key, std::size_t line_no)
{
  const json & v = field(j, key, line_no);
  if (!v.is_string()) {
    fail(line_no, std::string("field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::size_t count_field(const json & j, const char * key, std::size_t line_no)
{
  const json & v = field(j, key, line_no);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    fail(line_no, std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double number_field(const json & j, const char * key, std::size_t line_no)
{
  const json & v = field(j, key, line_no);
  if (!v.is_number()) {
    fail(line_no, std::string("field '") + key + "' must be a number");
  }
  return v.get<double>();
}

template <std::size_t N>
std::array<double, N> array_field(const json & j, const char * key, std::size_t line_no)
{
  const json & v = field(j, key, line_no);
  if (!v.is_array() || v.size() != N) {
    fail(line_no, std::string("field '") + key + "' must be an array of " + std::to_string(N) + " numbers");
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if (!v[i].is_number()) {
      fail(line_no, std::string("field '") + key + "' must contain numbers");
    }
    out[i] = v[i].get<double>();
  }
  return out;
}

BoxBEV box_field(const json & j, const char * key, std::size_t line_no)
{
  const auto v = array_field<5>(j, key, line_no);
  try {
    return BoxBEV::make(v[0], v[1], v[2], v[3], v[4]);
  } catch (const std::invalid_argument & e) {
    fail(line_no, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

json to_json(const ObjectRecord & r)
{
  json pts = json::array();
  for (const Vec2 p : r.points.points) {
    pts.push_back(json::array({p.x, p.y}));
  }
  json j = {
    {"schema", kObjectSchema},
    {"frame", r.frame},
    {"index", r.index},
    {"class", r.class_name},
    {"difficulty", to_string(r.difficulty)},
    {"label", box_json(r.label)},
  };
  if (r.truth) {
    j["truth"] = box_json(*r.truth);
  }
  j["points"] = std::move(pts);
  return j;
}

json to_json(const UncertaintyRecord & r)
{
  return {
    {"schema", kUncertaintySchema},
    {"frame", r.frame},
    {"index", r.index},
    {"method", r.method},
    {"M", r.num_points},
    {"mean", array_json(r.mean)},
    {"var", array_json(r.var)},
    {"enc_var", array_json(r.encoded_var)},
  };
}

json to_json(const DetectionRecord & r)
{
  json j = {
    {"schema", kDetectionSchema},
    {"frame", r.frame},
    {"box", box_json(r.detection.box)},
    {"score", r.detection.score},
  };
  if (r.detection.var) {
    j["var"] = array_json(*r.detection.var);
  }
  return j;
}

ObjectRecord object_from_json(const json & j, std::size_t line_no)
{
  expect_schema(j, kObjectSchema, line_no);
  ObjectRecord r;
  r.frame = string_field(j, "frame", line_no);
  r.index = count_field(j, "index", line_no);
  r.class_name = string_field(j, "class", line_no);
  try {
    r.difficulty = difficulty_from_string(string_field(j, "difficulty", line_no));
  } catch (const std::invalid_argument & e) {
    fail(line_no, e.what());
  }
  r.label = box_field(j, "label", line_no);
  if (j.contains("truth")) {
    r.truth = box_field(j, "truth", line_no);
  }
  const json & pts = field(j, "points", line_no);
  if (!pts.is_array()) {
    fail(line_no, "field 'points' must be an array");
  }
  for (const auto & p : pts) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      fail(line_no, "points must be [x, y] pairs");
    }
    r.points.points.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return r;
}

UncertaintyRecord uncertainty_from_json(const json & j, std::size_t line_no)
{
  expect_schema(j, kUncertaintySchema, line_no);
  UncertaintyRecord r;
  r.frame = string_field(j, "frame", line_no);
  r.index = count_field(j, "index", line_no);
  r.method = string_field(j, "method", line_no);
  r.num_points = count_field(j, "M", line_no);
  r.mean = array_field<5>(j, "mean", line_no);
  r.var = array_field<5>(j, "var", line_no);
  r.encoded_var = array_field<6>(j, "enc_var", line_no);
  return r;
}

DetectionRecord detection_from_json(const json & j, std::size_t line_no)
{
  expect_schema(j, kDetectionSchema, line_no);
  DetectionRecord r;
  r.frame = string_field(j, "frame", line_no);
  r.detection.box = box_field(j, "box", line_no);
  r.detection.score = number_field(j, "score", line_no);
  if (!std::isfinite(r.detection.score)) {
    fail(line_no, "score must be finite");
  }
  if (j.contains("var")) {
    r.detection.var = array_field<6>(j, "var", line_no);
  }
  return r;
}

std::string to_jsonl(const std::vector<json> & records)
{
  std::string out;
  for (const auto & r : records) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

namespace
{

// Parsed records paired with their 1-based source line.
std::vector<std::pair<std::size_t, json>> parse_lines(std::string_view text)
{
  std::vector<std::pair<std::size_t, json>> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        out.emplace_back(line_no, json::parse(line));
      } catch (const json::parse_error & e) {
        throw MalformedLine(line_no, e.what());
      }
    }
    if (nl == std::string_view::npos) {
      break;
    }
    text.remove_prefix(nl + 1);
  }
  return out;
}

template <typename Record, typename Fn>
std::vector<Record> parse_all(std::string_view text, Fn && from_json)
{
  std::vector<Record> out;
  for (const auto & [line_no, j] : parse_lines(text)) {
    out.push_back(from_json(j, line_no));
  }
  return out;
}

}  // namespace

std::vector<json> parse_jsonl(std::string_view text)
{
  std::vector<json> out;
  for (auto & entry : parse_lines(text)) {
    out.push_back(std::move(entry.second));
  }
  return out;
}

std::vector<ObjectRecord> parse_object_records(std::string_view text)
{
  return parse_all<ObjectRecord>(text, object_from_json);
}

std::vector<UncertaintyRecord> parse_uncertainty_records(std::string_view text)
{
  return parse_all<UncertaintyRecord>(text, uncertainty_from_json);
}

std::vector<DetectionRecord> parse_detection_records(std::string_view text)
{
  return parse_all<DetectionRecord>(text, detection_from_json);
}

std::vector<json> pr_curve_records(
  const APResult & ap, const std::string & method, std::optional<std::size_t> seed, Difficulty level)
{
  std::vector<json> out;
  const auto base = [&](const char * kind) {
    json j = {{"schema", kPrCurveSchema}, {"kind", kind}, {"method", method}};
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["difficulty"] = to_string(level);
    j["variant"] = to_string(ap.variant);
    return j;
  };
  for (std::size_t i = 0; i < ap.recalls.size(); ++i) {
    json j = base("point");
    j["recall"] = ap.recalls[i];
    j["precision"] = ap.precisions[i];
    out.push_back(std::move(j));
  }
  json j = base("ap");
  j["ap"] = ap.ap;
  j["tp"] = ap.tp;
  j["fp"] = ap.fp;
  j["fn"] = ap.fn;
  out.push_back(std::move(j));
  return out;
}

}  // namespace bevlu
