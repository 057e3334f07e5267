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

#include "bevlu/config.hpp"

#include <set>
#include <string>

namespace bevlu
{

using nlohmann::json;

namespace
{

// Reads known keys of one JSON object and rejects the rest.
class Section
{
public:
  Section(const json & j, std::string path) : j_(j), path_(std::move(path))
  {
    if (!j_.is_object()) {
      throw ConfigError(path_ + ": expected an object");
    }
  }

  ~Section() noexcept(false)
  {
    if (std::uncaught_exceptions() > 0) {
      return;
    }
    for (const auto & [key, value] : j_.items()) {
      if (!seen_.count(key)) {
        throw ConfigError(path_ + "." + key + ": unknown key");
      }
    }
  }

  template <typename T>
  void read(const char * key, T & out)
  {
    seen_.insert(key);
    if (!j_.contains(key)) {
      return;
    }
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception & e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    }
  }

  const json * child(const char * key)
  {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  std::string path(const char * key) const { return path_ + "." + key; }

private:
  const json & j_;
  std::string path_;
  std::set<std::string> seen_;
};

}  // namespace

json config_to_json(const ExperimentConfig & cfg)
{
  const auto & s = cfg.scene;
  const auto & c = s.corruption;
  json scene = {
    {"min_objects", s.min_objects},
    {"max_objects", s.max_objects},
    {"length_mean", s.length_mean},
    {"length_std", s.length_std},
    {"width_mean", s.width_mean},
    {"width_std", s.width_std},
    {"x_min", s.x_min},
    {"x_max", s.x_max},
    {"y_min", s.y_min},
    {"y_max", s.y_max},
    {"heading_max", s.heading_max},
    {"angular_resolution", s.angular_resolution},
    {"fov_min", s.fov_min},
    {"fov_max", s.fov_max},
    {"max_range", s.max_range},
    {"range_noise_std", s.range_noise_std},
    {"corruption",
     {{"along", c.along}, {"across", c.across}, {"length", c.length}, {"width", c.width}, {"heading", c.heading}}},
    {"easy_min_points", s.easy_min_points},
    {"easy_min_coverage", s.easy_min_coverage},
    {"moderate_min_points", s.moderate_min_points},
    {"moderate_min_coverage", s.moderate_min_coverage},
    {"hard_min_points", s.hard_min_points},
  };
  const auto & t = cfg.train;
  json train = {
    {"epochs", t.epochs},
    {"learning_rate", t.learning_rate},
    {"batch_size", t.batch_size},
    {"hidden", t.hidden},
    {"grad_clip", t.grad_clip},
    {"init_log_var", t.init_log_var},
  };
  const auto & g = cfg.generative;
  json generative = {
    {"num_reference_points", g.num_reference_points},
    {"num_nearest", g.num_nearest},
    {"sigma_s", g.sigma_s},
    {"prior_var", g.prior_var},
  };
  const auto & h = cfg.heuristic;
  json heuristic = {{"var_min", h.var_min}, {"var_max", h.var_max}, {"m_min", h.m_min}, {"m_max", h.m_max}};
  json methods = json::array();
  for (const auto & m : cfg.methods) {
    methods.push_back(m.name);
  }
  return {
    {"scene", scene},
    {"train_scenes", cfg.train_scenes},
    {"val_scenes", cfg.val_scenes},
    {"min_detection_points", cfg.min_detection_points},
    {"train", train},
    {"generative", generative},
    {"heuristic", heuristic},
    {"methods", methods},
    {"sweep_log10_var", cfg.sweep_log10_var},
    {"n_seeds", cfg.n_seeds},
    {"root_seed", cfg.root_seed},
    {"difficulty_variant", to_string(cfg.variant)},
  };
}

ExperimentConfig config_from_json(const json & j)
{
  ExperimentConfig cfg;
  Section root(j, "config");
  if (const json * sj = root.child("scene")) {
    Section s(*sj, root.path("scene"));
    auto & sc = cfg.scene;
    s.read("min_objects", sc.min_objects);
    s.read("max_objects", sc.max_objects);
    s.read("length_mean", sc.length_mean);
    s.read("length_std", sc.length_std);
    s.read("width_mean", sc.width_mean);
    s.read("width_std", sc.width_std);
    s.read("x_min", sc.x_min);
    s.read("x_max", sc.x_max);
    s.read("y_min", sc.y_min);
    s.read("y_max", sc.y_max);
    s.read("heading_max", sc.heading_max);
    s.read("angular_resolution", sc.angular_resolution);
    s.read("fov_min", sc.fov_min);
    s.read("fov_max", sc.fov_max);
    s.read("max_range", sc.max_range);
    s.read("range_noise_std", sc.range_noise_std);
    if (const json * cj = s.child("corruption")) {
      Section c(*cj, s.path("corruption"));
      c.read("along", sc.corruption.along);
      c.read("across", sc.corruption.across);
      c.read("length", sc.corruption.length);
      c.read("width", sc.corruption.width);
      c.read("heading", sc.corruption.heading);
    }
    s.read("easy_min_points", sc.easy_min_points);
    s.read("easy_min_coverage", sc.easy_min_coverage);
    s.read("moderate_min_points", sc.moderate_min_points);
    s.read("moderate_min_coverage", sc.moderate_min_coverage);
    s.read("hard_min_points", sc.hard_min_points);
  }
  root.read("train_scenes", cfg.train_scenes);
  root.read("val_scenes", cfg.val_scenes);
  root.read("min_detection_points", cfg.min_detection_points);
  if (const json * tj = root.child("train")) {
    Section t(*tj, root.path("train"));
    t.read("epochs", cfg.train.epochs);
    t.read("learning_rate", cfg.train.learning_rate);
    t.read("batch_size", cfg.train.batch_size);
    t.read("hidden", cfg.train.hidden);
    t.read("grad_clip", cfg.train.grad_clip);
    t.read("init_log_var", cfg.train.init_log_var);
  }
  if (const json * gj = root.child("generative")) {
    Section g(*gj, root.path("generative"));
    g.read("num_reference_points", cfg.generative.num_reference_points);
    g.read("num_nearest", cfg.generative.num_nearest);
    g.read("sigma_s", cfg.generative.sigma_s);
    g.read("prior_var", cfg.generative.prior_var);
  }
  if (const json * hj = root.child("heuristic")) {
    Section h(*hj, root.path("heuristic"));
    h.read("var_min", cfg.heuristic.var_min);
    h.read("var_max", cfg.heuristic.var_max);
    h.read("m_min", cfg.heuristic.m_min);
    h.read("m_max", cfg.heuristic.m_max);
  }
  if (const json * mj = root.child("methods")) {
    if (!mj->is_array()) {
      throw ConfigError("config.methods: expected an array of names");
    }
    cfg.methods.clear();
    for (const auto & name : *mj) {
      if (!name.is_string()) {
        throw ConfigError("config.methods: expected an array of names");
      }
      try {
        cfg.methods.push_back(method_from_name(name.get<std::string>()));
      } catch (const std::exception & e) {
        throw ConfigError(std::string("config.methods: ") + e.what());
      }
    }
  }
  root.read("sweep_log10_var", cfg.sweep_log10_var);
  root.read("n_seeds", cfg.n_seeds);
  root.read("root_seed", cfg.root_seed);
  std::string variant = to_string(cfg.variant);
  root.read("difficulty_variant", variant);
  if (variant == "R41") {
    cfg.variant = RecallVariant::R41;
  } else if (variant == "R40") {
    cfg.variant = RecallVariant::R40;
  } else {
    throw ConfigError("config.difficulty_variant: expected R41 or R40");
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument & e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const Error & e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

}  // namespace bevlu
