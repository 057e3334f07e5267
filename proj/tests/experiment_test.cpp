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

#include "bevlu/experiment.hpp"

namespace bevlu
{
namespace
{

ExperimentConfig small_config()
{
  ExperimentConfig cfg;
  cfg.train_scenes = 12;
  cfg.val_scenes = 6;
  cfg.train.epochs = 15;
  cfg.n_seeds = 2;
  cfg.threads = 1;
  return cfg;
}

TEST(Methods, DefaultTable)
{
  std::vector<std::string> names;
  for (const auto & m : default_methods()) {
    names.push_back(m.name);
  }
  EXPECT_EQ(names, (std::vector<std::string>{"baseline-nll", "kld-fixed", "kld-numpoints", "kld-covxhull", "kld-inferred", "nll-sampled"}));
  const MethodSpec fixed = method_from_name("kld-fixed");
  EXPECT_EQ(fixed.loss, LossKind::Kld);
  EXPECT_EQ(fixed.provider, UncertaintyProvider::Fixed);
  EXPECT_DOUBLE_EQ(fixed.fixed_sigma2, 0.01);
  const MethodSpec sampled = method_from_name("nll-sampled");
  EXPECT_TRUE(sampled.sample_labels);
  EXPECT_EQ(sampled.loss, LossKind::Nll);
  EXPECT_EQ(sampled.provider, UncertaintyProvider::Generative);
  EXPECT_DOUBLE_EQ(method_from_name("kld-fixed:0.1").fixed_sigma2, 0.1);
  EXPECT_THROW(method_from_name("kld-fixed:0"), OutOfRange);
  EXPECT_THROW(method_from_name("mystery"), std::invalid_argument);
}

TEST(SeedData, SharedAcrossMethods)
{
  const ExperimentConfig cfg = small_config();
  const SeedData d = build_seed_data(cfg, 42);
  ASSERT_FALSE(d.train_base.empty());
  EXPECT_EQ(d.var_generative.size(), d.train_base.size());
  EXPECT_EQ(d.var_numpoints.size(), d.train_base.size());
  EXPECT_EQ(d.var_covxhull.size(), d.train_base.size());
  EXPECT_EQ(d.val_features.size(), d.val_frame.size());
  EXPECT_EQ(d.val_truth.size(), cfg.val_scenes);
  const auto baseline = training_set_for(d, method_from_name("baseline-nll"));
  const auto inferred = training_set_for(d, method_from_name("kld-inferred"));
  ASSERT_EQ(baseline.size(), inferred.size());
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    EXPECT_EQ(baseline[i].features, inferred[i].features);
    EXPECT_EQ(baseline[i].target, inferred[i].target);
    for (const double v : inferred[i].label_var) {
      EXPECT_GE(v, kVarMin);
      EXPECT_LE(v, kVarMax);
    }
  }
  for (const auto & s : training_set_for(d, method_from_name("kld-fixed"))) {
    for (const double v : s.label_var) {
      EXPECT_DOUBLE_EQ(v, 0.01);
    }
  }
}

TEST(RunExperiment, TableShapeAndSweep)
{
  const ExperimentConfig cfg = small_config();
  const ExperimentResult r = run_experiment(cfg);
  ASSERT_EQ(r.table.size(), cfg.methods.size());
  for (std::size_t m = 0; m < r.table.size(); ++m) {
    EXPECT_EQ(r.table[m].method, cfg.methods[m].name);
    EXPECT_EQ(r.table[m].n_ok, cfg.n_seeds);
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_GE(r.table[m].mean[k], 0.0);
      EXPECT_LE(r.table[m].mean[k], 100.0);
    }
  }
  ASSERT_EQ(r.sweep.size(), 5U);
  for (std::size_t i = 0; i < r.sweep.size(); ++i) {
    EXPECT_DOUBLE_EQ(r.sweep[i].log10_var, -4.0 + static_cast<double>(i));
    EXPECT_EQ(r.sweep[i].n_ok, cfg.n_seeds);
  }
  EXPECT_EQ(r.table_cells.size(), cfg.methods.size() * cfg.n_seeds);
  EXPECT_EQ(r.sweep_cells.size(), 5 * cfg.n_seeds);
}

TEST(RunExperiment, SingleMethodSingleSeed)
{
  ExperimentConfig cfg = small_config();
  cfg.methods = {method_from_name("kld-inferred")};
  cfg.sweep_log10_var.clear();
  cfg.n_seeds = 1;
  const ExperimentResult r = run_experiment(cfg);
  ASSERT_EQ(r.table.size(), 1U);
  EXPECT_EQ(r.table[0].method, "kld-inferred");
  EXPECT_EQ(r.table[0].n_ok, 1U);
  EXPECT_TRUE(r.sweep.empty());
  for (const double s : r.table[0].std) {
    EXPECT_EQ(s, 0.0);
  }
}

TEST(RunExperiment, FailingCellDoesNotAbortOthers)
{
  ExperimentConfig cfg = small_config();
  cfg.n_seeds = 1;
  cfg.sweep_log10_var.clear();
  cfg.methods = {method_from_name("baseline-nll"), MethodSpec{"broken", LossKind::Kld, UncertaintyProvider::Fixed, 0.0, false}};
  const ExperimentResult r = run_experiment(cfg);
  ASSERT_EQ(r.table_cells.size(), 2U);
  EXPECT_TRUE(r.table_cells[0].ok);
  EXPECT_FALSE(r.table_cells[1].ok);
  EXPECT_FALSE(r.table_cells[1].error.empty());
  EXPECT_EQ(r.table[1].n_ok, 0U);
}

TEST(RunExperiment, ThreadCountDoesNotChangeResults)
{
  ExperimentConfig cfg = small_config();
  cfg.sweep_log10_var = {-2.0};
  const ExperimentResult one = run_experiment(cfg);
  cfg.threads = 3;
  const ExperimentResult three = run_experiment(cfg);
  ASSERT_EQ(one.table_cells.size(), three.table_cells.size());
  for (std::size_t i = 0; i < one.table_cells.size(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_EQ(one.table_cells[i].ap[k].ap, three.table_cells[i].ap[k].ap);
    }
    EXPECT_EQ(one.table_cells[i].final_train_loss, three.table_cells[i].final_train_loss);
  }
}

TEST(Config, Validation)
{
  ExperimentConfig cfg;
  cfg.n_seeds = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = ExperimentConfig{};
  cfg.sweep_log10_var = {1.0};
  EXPECT_THROW(cfg.validate(), OutOfRange);
}

}  // namespace
}  // namespace bevlu
