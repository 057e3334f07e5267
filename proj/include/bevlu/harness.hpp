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

#ifndef BEVLU__HARNESS_HPP_
#define BEVLU__HARNESS_HPP_

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bevlu/config.hpp"
#include "bevlu/experiment.hpp"
#include "bevlu/records.hpp"

namespace bevlu
{

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitParse = 2, kExitNumerical = 3 };

class UsageError : public Error
{
public:
  using Error::Error;
};

const char * tool_version();

struct Dataset
{
  std::vector<std::string> frames;  // every frame seen, in load order
  std::vector<ObjectRecord> objects;
};

/// Per-frame problems; `errors` make the load unusable, `warnings` do not.
struct LoadReport
{
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

/// KITTI layout: label_2/, calib/ and velodyne/ under `root`. Frames come from
/// `root/frames.txt` when present, otherwise from the label files. A missing
/// calibration skips the frame; a missing scan keeps its objects with no points.
Dataset load_kitti_dataset(const std::filesystem::path & root, LoadReport & report, const CropRange & crop = {});

/// A KITTI root directory or a line-delimited file of object records.
Dataset load_dataset(const std::filesystem::path & path, LoadReport & report);

struct UncertaintyMethod
{
  enum class Kind { Generative, NumPoints, ConvexHull, Fixed };
  Kind kind{Kind::Generative};
  double sigma2{0.0};
  std::string tag;
};

/// "generative", "numpoints", "covxhull" or "fixed:<sigma2>"; throws UsageError.
UncertaintyMethod parse_uncertainty_method(const std::string & text);

UncertaintyRecord infer_uncertainty(
  const ObjectRecord & obj, const UncertaintyMethod & method, const GenerativeModelConfig & gen,
  const HeuristicConfig & heur);

std::string sha256_hex(std::string_view bytes);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path & path, std::string_view bytes);

std::string read_file(const std::filesystem::path & path);

using OutputFiles = std::map<std::string, std::string>;  // file name -> bytes

/// ap_table.csv, ap_table.txt, sweep.csv, cells.csv and pr_curves.jsonl.
OutputFiles experiment_outputs(const ExperimentConfig & cfg, const ExperimentResult & res);

/// Table text with "(+x.xx)" deltas against the baseline-nll row.
std::string format_ap_table(const ExperimentResult & res);

nlohmann::json make_manifest(
  const std::string & command, const nlohmann::json & config, const std::vector<std::uint64_t> & seeds,
  const std::vector<std::string> & inputs, const OutputFiles & outputs);

/// Writes every output and then manifest.json, each atomically.
void write_outputs(const std::filesystem::path & dir, const OutputFiles & outputs, const nlohmann::json & manifest);

/// Loads an experiment config file; a manifest is accepted and its snapshot used.
ExperimentConfig load_experiment_config(const std::filesystem::path & path);

struct InferOptions
{
  std::filesystem::path dataset;
  std::string method{"generative"};
  std::filesystem::path out;
  std::optional<std::filesystem::path> config;
};

struct ExperimentOptions
{
  std::optional<std::filesystem::path> config;
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> methods;
  std::optional<std::vector<double>> sweep;
  std::optional<RecallVariant> variant;
  std::optional<std::size_t> n_seeds;
  std::size_t threads{0};
};

struct EvaluateOptions
{
  std::filesystem::path detections;
  std::filesystem::path ground_truth;
  std::filesystem::path out_dir;
  RecallVariant variant{RecallVariant::R41};
};

struct HeatmapOptions
{
  std::filesystem::path dataset;
  std::string frame;
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> config;
};

struct SynthGenOptions
{
  std::optional<std::filesystem::path> config;
  std::filesystem::path out;
  std::optional<std::uint64_t> seed;
  std::size_t scenes{10};
};

/// Each command reports problems on `log` and returns an ExitCode.
int cmd_infer(const InferOptions & opt, std::ostream & log);
int cmd_experiment(const ExperimentOptions & opt, std::ostream & log);
int cmd_evaluate(const EvaluateOptions & opt, std::ostream & log);
int cmd_heatmap(const HeatmapOptions & opt, std::ostream & log);
int cmd_synth_gen(const SynthGenOptions & opt, std::ostream & log);

/// Effective experiment config after applying the command-line overrides.
ExperimentConfig resolve_experiment_config(const ExperimentOptions & opt);

}  // namespace bevlu

#endif  // BEVLU__HARNESS_HPP_
