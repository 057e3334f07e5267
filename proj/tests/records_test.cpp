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

#include <fstream>
#include <sstream>

#include "bevlu/records.hpp"
#include "oracles.hpp"

namespace bevlu
{
namespace
{

using nlohmann::json;

json load_schema(const std::string & name)
{
  std::ifstream in(std::string(BEVLU_SCHEMA_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << name;
  std::stringstream ss;
  ss << in.rdbuf();
  return json::parse(ss.str());
}

ObjectRecord sample_object()
{
  ObjectRecord r;
  r.frame = "000123";
  r.index = 4;
  r.difficulty = Difficulty::Moderate;
  r.label = BoxBEV::make(12.25, -3.125, 4.1, 1.7, 0.3);
  r.truth = BoxBEV::make(12.5, -3.0, 4.0, 1.6, 0.31);
  r.points.points = {{10.0, -3.5}, {10.1 / 3.0, -2.0}, {1e-17, 7.0}};
  return r;
}

UncertaintyRecord sample_uncertainty()
{
  UncertaintyRecord r;
  r.frame = "000123";
  r.index = 4;
  r.method = "generative";
  r.num_points = 3;
  r.mean = {12.25, -3.125, 4.1, 1.7, 0.3};
  r.var = {0.01, 0.02, 0.3, 0.04, 0.001};
  r.encoded_var = {0.01, 0.02, 0.3 / 16.81, 0.04 / 2.89, 0.0009, 0.0001};
  return r;
}

TEST(ObjectRecord, RoundTripIsExact)
{
  const ObjectRecord r = sample_object();
  const auto back = parse_object_records(to_jsonl({to_json(r)}));
  ASSERT_EQ(back.size(), 1U);
  EXPECT_EQ(back[0].frame, r.frame);
  EXPECT_EQ(back[0].index, r.index);
  EXPECT_EQ(back[0].class_name, "Car");
  EXPECT_EQ(back[0].difficulty, r.difficulty);
  EXPECT_EQ(back[0].label, r.label);
  ASSERT_TRUE(back[0].truth.has_value());
  EXPECT_EQ(*back[0].truth, *r.truth);
  ASSERT_EQ(back[0].points.size(), 3U);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(back[0].points.points[k].x, r.points.points[k].x);
    EXPECT_EQ(back[0].points.points[k].y, r.points.points[k].y);
  }
  ObjectRecord no_truth = r;
  no_truth.truth.reset();
  EXPECT_FALSE(to_json(no_truth).contains("truth"));
  EXPECT_FALSE(object_from_json(to_json(no_truth), 1).truth.has_value());
}

TEST(UncertaintyRecord, RoundTripIsExact)
{
  const UncertaintyRecord r = sample_uncertainty();
  const auto back = parse_uncertainty_records(to_jsonl({to_json(r), to_json(r)}));
  ASSERT_EQ(back.size(), 2U);
  EXPECT_EQ(back[1].method, r.method);
  EXPECT_EQ(back[1].num_points, r.num_points);
  EXPECT_EQ(back[1].mean, r.mean);
  EXPECT_EQ(back[1].var, r.var);
  EXPECT_EQ(back[1].encoded_var, r.encoded_var);
}

TEST(DetectionRecord, RoundTripIsExact)
{
  DetectionRecord with_var{"7", {BoxBEV::make(1, 2, 3, 1.5, -0.2), 0.875, EncodedVector{1e-3, 2e-3, 3e-3, 4e-3, 5e-3, 6e-3}}};
  DetectionRecord without{"8", {BoxBEV::make(5, 6, 4, 2, 1.0), -1.5, std::nullopt}};
  const auto back = parse_detection_records(to_jsonl({to_json(with_var), to_json(without)}));
  ASSERT_EQ(back.size(), 2U);
  EXPECT_EQ(back[0].frame, "7");
  EXPECT_EQ(back[0].detection.box, with_var.detection.box);
  EXPECT_EQ(back[0].detection.score, 0.875);
  ASSERT_TRUE(back[0].detection.var.has_value());
  EXPECT_EQ(*back[0].detection.var, *with_var.detection.var);
  EXPECT_FALSE(back[1].detection.var.has_value());
}

TEST(Jsonl, OneCompactObjectPerLine)
{
  const std::string text = to_jsonl({json{{"a", 1}}, json{{"b", 2}}});
  EXPECT_EQ(text, "{\"a\":1}\n{\"b\":2}\n");
  EXPECT_EQ(parse_jsonl("\n  \n{\"a\":1}\r\n\n").size(), 1U);
  EXPECT_TRUE(parse_jsonl("").empty());
}

TEST(Jsonl, ErrorsCarrySourceLine)
{
  const std::string good = to_json(sample_object()).dump();
  try {
    parse_object_records(good + "\n\n{not json\n");
    FAIL();
  } catch (const MalformedLine & e) {
    EXPECT_EQ(e.line_no(), 3U);
  }
  json missing = to_json(sample_object());
  missing.erase("label");
  try {
    parse_object_records(good + "\n\n" + missing.dump() + "\n");
    FAIL();
  } catch (const MalformedLine & e) {
    EXPECT_EQ(e.line_no(), 3U);
  }
  json wrong = to_json(sample_object());
  wrong["schema"] = "bevlu.object/0";
  EXPECT_THROW(object_from_json(wrong, 1), MalformedLine);
  json short_box = to_json(sample_uncertainty());
  short_box["var"] = json::array({1, 2});
  EXPECT_THROW(uncertainty_from_json(short_box, 1), MalformedLine);
  EXPECT_THROW(detection_from_json(json::array(), 1), MalformedLine);
}

TEST(Schemas, RecordsValidate)
{
  const json object = load_schema("object.schema.json");
  const json uncertainty = load_schema("uncertainty.schema.json");
  const json detection = load_schema("detection.schema.json");
  const json prcurve = load_schema("prcurve.schema.json");
  EXPECT_EQ(oracle::validate_schema(object, to_json(sample_object())), "");
  ObjectRecord bare = sample_object();
  bare.truth.reset();
  bare.points.points.clear();
  EXPECT_EQ(oracle::validate_schema(object, to_json(bare)), "");
  EXPECT_EQ(oracle::validate_schema(uncertainty, to_json(sample_uncertainty())), "");
  EXPECT_EQ(oracle::validate_schema(detection, to_json(DetectionRecord{"1", {BoxBEV::make(1, 2, 3, 1, 0), 0.5, std::nullopt}})), "");

  APResult ap;
  ap.tp = 3;
  ap.fp = 1;
  ap.fn = 2;
  ap.recalls = recall_positions(RecallVariant::R41);
  ap.precisions.assign(ap.recalls.size(), 0.5);
  ap.ap = 0.5;
  const auto curve = pr_curve_records(ap, "kld-inferred", 2, Difficulty::Hard);
  ASSERT_EQ(curve.size(), 42U);
  for (const auto & r : curve) {
    EXPECT_EQ(oracle::validate_schema(prcurve, r), "");
  }
  EXPECT_EQ(curve.back()["kind"], "ap");
  EXPECT_EQ(curve.back()["tp"], 3);
  EXPECT_TRUE(pr_curve_records(ap, "eval", std::nullopt, Difficulty::Easy).front()["seed"].is_null());
}

TEST(Schemas, ValidatorRejectsViolations)
{
  const json object = load_schema("object.schema.json");
  json extra = to_json(sample_object());
  extra["colour"] = "red";
  EXPECT_NE(oracle::validate_schema(object, extra), "");
  json bad = to_json(sample_object());
  bad["difficulty"] = "Impossible";
  EXPECT_NE(oracle::validate_schema(object, bad), "");
  bad = to_json(sample_object());
  bad["points"][0] = json::array({1.0});
  EXPECT_NE(oracle::validate_schema(object, bad), "");
}

}  // namespace
}  // namespace bevlu
