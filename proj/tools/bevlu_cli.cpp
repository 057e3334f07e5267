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

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "bevlu/harness.hpp"

namespace
{

bevlu::RecallVariant parse_variant(const std::string & s)
{
  if (s == "R41") {
    return bevlu::RecallVariant::R41;
  }
  if (s == "R40") {
    return bevlu::RecallVariant::R40;
  }
  throw bevlu::UsageError("--difficulty-variant expects R41 or R40");
}

std::vector<double> parse_sweep(const std::string & s)
{
  std::vector<double> out;
  if (s == "none") {
    return out;
  }
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception &) {
      throw bevlu::UsageError("--sweep expects comma-separated log10 variances or 'none'");
    }
    if (comma == std::string::npos) {
      break;
    }
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Label uncertainty for LiDAR BEV boxes"};
  app.set_version_flag("--version", bevlu::tool_version());
  app.require_subcommand(1);

  bevlu::InferOptions infer;
  std::string infer_config;
  auto * c_infer = app.add_subcommand("infer", "Label uncertainty for every object of a dataset");
  c_infer->add_option("dataset", infer.dataset, "KITTI root or object records file")->required();
  c_infer->add_option("--method", infer.method, "generative, numpoints, covxhull or fixed:<v>");
  c_infer->add_option("--out", infer.out, "Output records file")->required();
  c_infer->add_option("--config", infer_config, "Config file (generative and heuristic sections)");

  bevlu::ExperimentOptions exp;
  std::string exp_config;
  std::string exp_variant;
  std::string exp_sweep;
  std::uint64_t exp_seed = 0;
  std::size_t exp_seeds = 0;
  auto * c_exp = app.add_subcommand("experiment", "Synthetic benchmark: method table and variance sweep");
  c_exp->add_option("--config", exp_config, "Config file or a previous manifest");
  c_exp->add_option("--out", exp.out_dir, "Output directory")->required();
  auto * o_seed = c_exp->add_option("--seed", exp_seed, "Root seed");
  c_exp->add_option("--method", exp.methods, "Restrict to these methods (repeatable)");
  auto * o_sweep = c_exp->add_option("--sweep", exp_sweep, "log10 variances, comma-separated, or 'none'");
  auto * o_variant = c_exp->add_option("--difficulty-variant", exp_variant, "R41 (with r=0) or R40");
  auto * o_nseeds = c_exp->add_option("--seeds", exp_seeds, "Number of seeds");
  c_exp->add_option("--threads", exp.threads, "Worker threads; 0 uses all cores");

  bevlu::EvaluateOptions ev;
  std::string ev_variant = "R41";
  auto * c_eval = app.add_subcommand("evaluate", "BEV AP of detection records against a dataset");
  c_eval->add_option("detections", ev.detections, "Detection records file")->required();
  c_eval->add_option("ground_truth", ev.ground_truth, "KITTI root or object records file")->required();
  c_eval->add_option("--out", ev.out_dir, "Output directory")->required();
  c_eval->add_option("--difficulty-variant", ev_variant, "R41 (with r=0) or R40");

  bevlu::HeatmapOptions hm;
  std::string hm_config;
  auto * c_hm = app.add_subcommand("heatmap", "Posterior corner density grids for one frame");
  c_hm->add_option("dataset", hm.dataset, "KITTI root or object records file")->required();
  c_hm->add_option("frame", hm.frame, "Frame id")->required();
  c_hm->add_option("--out", hm.out_dir, "Output directory")->required();
  c_hm->add_option("--config", hm_config, "Config file (generative section)");

  bevlu::SynthGenOptions sg;
  std::string sg_config;
  std::uint64_t sg_seed = 0;
  auto * c_sg = app.add_subcommand("synth-gen", "Write synthetic scenes as object records");
  c_sg->add_option("--config", sg_config, "Config file (scene section)");
  c_sg->add_option("--out", sg.out, "Output records file")->required();
  auto * o_sg_seed = c_sg->add_option("--seed", sg_seed, "Root seed");
  c_sg->add_option("--scenes", sg.scenes, "Number of scenes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    return app.exit(e) == 0 ? bevlu::kExitOk : bevlu::kExitUsage;
  }

  try {
    if (c_infer->parsed()) {
      if (!infer_config.empty()) {
        infer.config = infer_config;
      }
      return bevlu::cmd_infer(infer, std::cerr);
    }
    if (c_exp->parsed()) {
      if (!exp_config.empty()) {
        exp.config = exp_config;
      }
      if (o_seed->count() > 0) {
        exp.seed = exp_seed;
      }
      if (o_sweep->count() > 0) {
        exp.sweep = parse_sweep(exp_sweep);
      }
      if (o_variant->count() > 0) {
        exp.variant = parse_variant(exp_variant);
      }
      if (o_nseeds->count() > 0) {
        exp.n_seeds = exp_seeds;
      }
      const int rc = bevlu::cmd_experiment(exp, std::cerr);
      if (rc == bevlu::kExitOk || rc == bevlu::kExitNumerical) {
        std::cout << bevlu::read_file(exp.out_dir / "ap_table.txt");
      }
      return rc;
    }
    if (c_eval->parsed()) {
      ev.variant = parse_variant(ev_variant);
      return bevlu::cmd_evaluate(ev, std::cerr);
    }
    if (c_hm->parsed()) {
      if (!hm_config.empty()) {
        hm.config = hm_config;
      }
      return bevlu::cmd_heatmap(hm, std::cerr);
    }
    if (c_sg->parsed()) {
      if (!sg_config.empty()) {
        sg.config = sg_config;
      }
      if (o_sg_seed->count() > 0) {
        sg.seed = sg_seed;
      }
      return bevlu::cmd_synth_gen(sg, std::cerr);
    }
  } catch (const bevlu::UsageError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return bevlu::kExitUsage;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return bevlu::kExitParse;
  }
  return bevlu::kExitUsage;
}
