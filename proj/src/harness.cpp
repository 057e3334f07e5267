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

#include "bevlu/harness.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "bevlu/encoding.hpp"
#include "bevlu/heatmap.hpp"
#include "bevlu/heuristics.hpp"
#include "bevlu/rng.hpp"
#include "bevlu/scene.hpp"

#ifndef BEVLU_VERSION
#define BEVLU_VERSION "unknown"
#endif

namespace bevlu
{

namespace fs = std::filesystem;
using nlohmann::json;

const char * tool_version() { return BEVLU_VERSION; }

std::string read_file(const fs::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path & path, std::string_view bytes)
{
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot write " + tmp.string());
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      throw Error("write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

std::string sha256_hex(std::string_view bytes)
{
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xf];
  }
  return out;
}

// Datasets ---------------------------------------------------------------

namespace
{

std::vector<std::string> kitti_frame_ids(const fs::path & root)
{
  const fs::path list = root / "frames.txt";
  if (fs::exists(list)) {
    return parse_frame_ids(read_file(list));
  }
  std::vector<std::string> ids;
  const fs::path labels = root / "label_2";
  if (!fs::is_directory(labels)) {
    return ids;
  }
  for (const auto & entry : fs::directory_iterator(labels)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      ids.push_back(entry.path().stem().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

Dataset load_kitti_dataset(const fs::path & root, LoadReport & report, const CropRange & crop)
{
  crop.validate();
  Dataset ds;
  if (!fs::is_directory(root / "label_2")) {
    report.errors.push_back(root.string() + ": no label_2 directory");
    return ds;
  }
  for (const auto & id : kitti_frame_ids(root)) {
    const fs::path label_path = root / "label_2" / (id + ".txt");
    const fs::path calib_path = root / "calib" / (id + ".txt");
    const fs::path scan_path = root / "velodyne" / (id + ".bin");
    if (!fs::exists(label_path)) {
      report.errors.push_back("frame " + id + ": missing label file");
      continue;
    }
    if (!fs::exists(calib_path)) {
      report.warnings.push_back("frame " + id + ": missing calibration, frame skipped");
      continue;
    }
    try {
      const Calibration calib = parse_calibration(read_file(calib_path));
      const auto objects = parse_label_file(read_file(label_path), calib);
      std::vector<RawPoint> points;
      if (fs::exists(scan_path)) {
        const std::string raw = read_file(scan_path);
        const auto bytes = std::as_bytes(std::span(raw.data(), raw.size()));
        const auto cloud = load_point_cloud(bytes);
        points = crop_to_range(cloud, crop);
      } else {
        report.warnings.push_back("frame " + id + ": missing scan, objects have no points");
      }
      ds.frames.push_back(id);
      for (std::size_t i = 0; i < objects.size(); ++i) {
        const LabeledObject & o = objects[i];
        ObjectRecord r;
        r.frame = id;
        r.index = i;
        r.class_name = o.class_name;
        r.difficulty = difficulty_of(o);
        r.label = o.box;
        if (!o.ignore) {
          r.points = associate_points_to_box(o, points);
        }
        ds.objects.push_back(std::move(r));
      }
    } catch (const Error & e) {
      report.errors.push_back("frame " + id + ": " + e.what());
    }
  }
  return ds;
}

Dataset load_dataset(const fs::path & path, LoadReport & report)
{
  if (fs::is_directory(path)) {
    return load_kitti_dataset(path, report);
  }
  Dataset ds;
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error & e) {
    report.errors.push_back(e.what());
    return ds;
  }
  try {
    ds.objects = parse_object_records(text);
  } catch (const Error & e) {
    report.errors.push_back(path.string() + ": " + e.what());
    return ds;
  }
  std::set<std::string> seen;
  for (const auto & o : ds.objects) {
    if (seen.insert(o.frame).second) {
      ds.frames.push_back(o.frame);
    }
  }
  return ds;
}

// Uncertainty inference --------------------------------------------------

UncertaintyMethod parse_uncertainty_method(const std::string & text)
{
  UncertaintyMethod m;
  m.tag = text;
  if (text == "generative") {
    m.kind = UncertaintyMethod::Kind::Generative;
  } else if (text == "numpoints") {
    m.kind = UncertaintyMethod::Kind::NumPoints;
  } else if (text == "covxhull") {
    m.kind = UncertaintyMethod::Kind::ConvexHull;
  } else if (text.rfind("fixed:", 0) == 0) {
    m.kind = UncertaintyMethod::Kind::Fixed;
    try {
      std::size_t used = 0;
      const std::string value = text.substr(6);
      m.sigma2 = std::stod(value, &used);
      if (used != value.size()) {
        throw std::invalid_argument("trailing characters");
      }
      fixed_variance(m.sigma2);
    } catch (const std::exception & e) {
      throw UsageError("bad fixed variance in '" + text + "': " + e.what());
    }
  } else {
    throw UsageError("unknown method '" + text + "' (generative, numpoints, covxhull, fixed:<v>)");
  }
  return m;
}

UncertaintyRecord infer_uncertainty(
  const ObjectRecord & obj, const UncertaintyMethod & method, const GenerativeModelConfig & gen,
  const HeuristicConfig & heur)
{
  UncertaintyRecord r;
  r.frame = obj.frame;
  r.index = obj.index;
  r.method = method.tag;
  r.num_points = obj.points.size();
  r.mean = obj.label.as_vector();
  switch (method.kind) {
    case UncertaintyMethod::Kind::Generative:
      r.var = infer_label_posterior(obj.label, obj.points, gen).var;
      break;
    case UncertaintyMethod::Kind::NumPoints:
      r.var = broadcast_variance(variance_from_point_count(obj.points.size(), heur));
      break;
    case UncertaintyMethod::Kind::ConvexHull:
      r.var = broadcast_variance(variance_from_convex_hull(obj.label, obj.points, heur));
      break;
    case UncertaintyMethod::Kind::Fixed:
      r.var = fixed_variance(method.sigma2);
      break;
  }
  r.encoded_var = propagate_variance(r.var, obj.label);
  return r;
}

// Manifests and outputs --------------------------------------------------

json make_manifest(
  const std::string & command, const json & config, const std::vector<std::uint64_t> & seeds,
  const std::vector<std::string> & inputs, const OutputFiles & outputs)
{
  json checksums = json::object();
  for (const auto & [name, bytes] : outputs) {
    checksums[name] = sha256_hex(bytes);
  }
  return {
    {"schema", kManifestSchema},
    {"tool", "bevlu"},
    {"version", tool_version()},
    {"command", command},
    {"config", config},
    {"seeds", seeds},
    {"inputs", inputs},
    {"outputs", checksums},
  };
}

void write_outputs(const fs::path & dir, const OutputFiles & outputs, const json & manifest)
{
  fs::create_directories(dir);
  for (const auto & [name, bytes] : outputs) {
    write_file_atomic(dir / name, bytes);
  }
  write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
}

ExperimentConfig load_experiment_config(const fs::path & path)
{
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error & e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  if (j.is_object() && j.contains("schema") && j["schema"] == kManifestSchema) {
    if (!j.contains("config")) {
      throw ConfigError(path.string() + ": manifest without config");
    }
    return config_from_json(j["config"]);
  }
  return config_from_json(j);
}

namespace
{

std::string fmt(const char * f, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

const MethodSummary * baseline_row(const ExperimentResult & res)
{
  for (const auto & m : res.table) {
    if (m.method == "baseline-nll") {
      return &m;
    }
  }
  return nullptr;
}

std::string cell_text(double mean, double std, std::size_t n_ok, const MethodSummary * base, std::size_t k, bool is_base)
{
  if (n_ok == 0) {
    return "failed";
  }
  std::string s = fmt("%.2f", mean);
  if (base && !is_base && base->n_ok > 0) {
    s += " (" + fmt("%+.2f", mean - base->mean[k]) + ")";
  }
  s += " +- " + fmt("%.2f", std);
  return s;
}

std::string pad(std::string s, std::size_t w)
{
  if (s.size() < w) {
    s.append(w - s.size(), ' ');
  }
  return s;
}

}  // namespace

std::string format_ap_table(const ExperimentResult & res)
{
  const MethodSummary * base = baseline_row(res);
  std::string out = pad("method", 16);
  for (const auto level : kEvalLevels) {
    out += pad(to_string(level), 26);
  }
  out += "seeds\n";
  for (const auto & m : res.table) {
    std::string line = pad(m.method, 16);
    for (std::size_t k = 0; k < 3; ++k) {
      line += pad(cell_text(m.mean[k], m.std[k], m.n_ok, base, k, &m == base), 26);
    }
    line += std::to_string(m.n_ok);
    out += line + "\n";
  }
  if (!res.sweep.empty()) {
    out += "\n" + pad("log10(var)", 16);
    for (const auto level : kEvalLevels) {
      out += pad(to_string(level), 26);
    }
    out += "seeds\n";
    for (const auto & s : res.sweep) {
      std::string line = pad(fmt("%+.2f", s.log10_var), 16);
      for (std::size_t k = 0; k < 3; ++k) {
        line += pad(cell_text(s.mean[k], s.std[k], s.n_ok, nullptr, k, false), 26);
      }
      line += std::to_string(s.n_ok);
      out += line + "\n";
    }
  }
  return out;
}

OutputFiles experiment_outputs(const ExperimentConfig & cfg, const ExperimentResult & res)
{
  (void)cfg;
  OutputFiles files;
  const MethodSummary * base = baseline_row(res);

  std::string table = "method";
  for (const char * level : {"easy", "moderate", "hard"}) {
    table += std::string(",") + level + "_mean," + level + "_std," + level + "_delta";
  }
  table += ",n_ok\n";
  for (const auto & m : res.table) {
    table += m.method;
    for (std::size_t k = 0; k < 3; ++k) {
      const bool have = m.n_ok > 0;
      const bool delta = have && base && base->n_ok > 0;
      table += "," + (have ? fmt("%.4f", m.mean[k]) : std::string()) + "," +
               (have ? fmt("%.4f", m.std[k]) : std::string()) + "," +
               (delta ? fmt("%+.4f", m.mean[k] - base->mean[k]) : std::string());
    }
    table += "," + std::to_string(m.n_ok) + "\n";
  }
  files["ap_table.csv"] = table;
  files["ap_table.txt"] = format_ap_table(res);

  std::string sweep = "log10_var,easy_mean,easy_std,moderate_mean,moderate_std,hard_mean,hard_std,n_ok\n";
  for (const auto & s : res.sweep) {
    sweep += fmt("%.4f", s.log10_var);
    for (std::size_t k = 0; k < 3; ++k) {
      sweep += s.n_ok > 0 ? "," + fmt("%.4f", s.mean[k]) + "," + fmt("%.4f", s.std[k]) : std::string(",,");
    }
    sweep += "," + std::to_string(s.n_ok) + "\n";
  }
  files["sweep.csv"] = sweep;

  std::string cells = "method,seed_index,seed,ok,easy,moderate,hard,final_train_loss,error\n";
  std::vector<json> curves;
  for (const auto * group : {&res.table_cells, &res.sweep_cells}) {
    for (const auto & c : *group) {
      cells += c.method + "," + std::to_string(c.seed_index) + "," + std::to_string(c.seed) + "," +
               (c.ok ? "1" : "0");
      for (std::size_t k = 0; k < 3; ++k) {
        cells += "," + (c.ok ? fmt("%.4f", 100.0 * c.ap[k].ap) : std::string());
      }
      std::string err = c.error;
      std::replace(err.begin(), err.end(), ',', ';');
      std::replace(err.begin(), err.end(), '\n', ' ');
      cells += "," + (c.ok ? fmt("%.6g", c.final_train_loss) : std::string()) + "," + err + "\n";
      if (c.ok) {
        for (std::size_t k = 0; k < 3; ++k) {
          auto recs = pr_curve_records(c.ap[k], c.method, c.seed_index, kEvalLevels[k]);
          curves.insert(curves.end(), recs.begin(), recs.end());
        }
      }
    }
  }
  files["cells.csv"] = cells;
  files["pr_curves.jsonl"] = to_jsonl(curves);
  return files;
}

// Commands ----------------------------------------------------------------

namespace
{

void report_load(const LoadReport & report, std::ostream & log)
{
  for (const auto & w : report.warnings) {
    log << "warning: " << w << "\n";
  }
  for (const auto & e : report.errors) {
    log << "error: " << e << "\n";
  }
}

std::vector<std::uint64_t> experiment_seeds(const ExperimentConfig & cfg)
{
  std::vector<std::uint64_t> seeds{cfg.root_seed};
  for (std::size_t s = 0; s < cfg.n_seeds; ++s) {
    seeds.push_back(derive_seed(cfg.root_seed, s));
  }
  return seeds;
}

fs::path manifest_path_for(const fs::path & out)
{
  fs::path m = out;
  m += ".manifest.json";
  return m;
}

}  // namespace

int cmd_infer(const InferOptions & opt, std::ostream & log)
{
  UncertaintyMethod method;
  ExperimentConfig cfg;
  try {
    method = parse_uncertainty_method(opt.method);
    if (opt.config) {
      cfg = load_experiment_config(*opt.config);
    }
  } catch (const UsageError & e) {
    log << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error & e) {
    log << "error: " << e.what() << "\n";
    return kExitParse;
  }
  LoadReport report;
  const Dataset ds = load_dataset(opt.dataset, report);
  report_load(report, log);
  if (!report.errors.empty()) {
    return kExitParse;
  }
  std::vector<json> records;
  for (const auto & obj : ds.objects) {
    if (obj.class_name == "DontCare") {
      continue;
    }
    try {
      records.push_back(to_json(infer_uncertainty(obj, method, cfg.generative, cfg.heuristic)));
    } catch (const std::exception & e) {
      log << "error: frame " << obj.frame << " object " << obj.index << ": " << e.what() << "\n";
      return kExitNumerical;
    }
  }
  json config = {
    {"method", method.tag}, {"generative", config_to_json(cfg)["generative"]},
    {"heuristic", config_to_json(cfg)["heuristic"]}};
  std::vector<std::string> inputs{opt.dataset.string()};
  if (opt.config) {
    inputs.push_back(opt.config->string());
  }
  const std::string bytes = to_jsonl(records);
  OutputFiles files{{opt.out.filename().string(), bytes}};
  write_file_atomic(opt.out, bytes);
  write_file_atomic(manifest_path_for(opt.out), make_manifest("infer", config, {}, inputs, files).dump(2) + "\n");
  return kExitOk;
}

ExperimentConfig resolve_experiment_config(const ExperimentOptions & opt)
{
  ExperimentConfig cfg = opt.config ? load_experiment_config(*opt.config) : ExperimentConfig{};
  if (opt.seed) {
    cfg.root_seed = *opt.seed;
  }
  if (!opt.methods.empty()) {
    cfg.methods.clear();
    for (const auto & name : opt.methods) {
      try {
        cfg.methods.push_back(method_from_name(name));
      } catch (const std::exception & e) {
        throw UsageError(e.what());
      }
    }
  }
  if (opt.sweep) {
    cfg.sweep_log10_var = *opt.sweep;
  }
  if (opt.variant) {
    cfg.variant = *opt.variant;
  }
  if (opt.n_seeds) {
    cfg.n_seeds = *opt.n_seeds;
  }
  cfg.threads = opt.threads;
  try {
    cfg.validate();
  } catch (const std::exception & e) {
    throw UsageError(e.what());
  }
  return cfg;
}

int cmd_experiment(const ExperimentOptions & opt, std::ostream & log)
{
  ExperimentConfig cfg;
  try {
    cfg = resolve_experiment_config(opt);
  } catch (const UsageError & e) {
    log << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error & e) {
    log << "error: " << e.what() << "\n";
    return kExitParse;
  }
  const ExperimentResult res = run_experiment(cfg);
  const OutputFiles files = experiment_outputs(cfg, res);
  std::vector<std::string> inputs;
  if (opt.config) {
    inputs.push_back(opt.config->string());
  }
  write_outputs(opt.out_dir, files, make_manifest("experiment", config_to_json(cfg), experiment_seeds(cfg), inputs, files));
  bool failed = false;
  for (const auto * group : {&res.table_cells, &res.sweep_cells}) {
    for (const auto & c : *group) {
      if (!c.ok) {
        log << "error: " << c.method << " seed " << c.seed_index << ": " << c.error << "\n";
        failed = true;
      }
    }
  }
  return failed ? kExitNumerical : kExitOk;
}

int cmd_evaluate(const EvaluateOptions & opt, std::ostream & log)
{
  std::vector<DetectionRecord> dets;
  try {
    dets = parse_detection_records(read_file(opt.detections));
  } catch (const Error & e) {
    log << "error: " << opt.detections.string() << ": " << e.what() << "\n";
    return kExitParse;
  }
  LoadReport report;
  const Dataset ds = load_dataset(opt.ground_truth, report);
  report_load(report, log);
  if (!report.errors.empty()) {
    return kExitParse;
  }
  std::map<std::string, FrameEval> by_frame;
  for (const auto & f : ds.frames) {
    by_frame[f];
  }
  for (const auto & o : ds.objects) {
    GroundTruth g{o.truth ? *o.truth : o.label, o.difficulty};
    if (o.class_name == "Van" || o.class_name == "DontCare") {
      g.difficulty = Difficulty::Ignored;
    } else if (o.class_name != "Car") {
      continue;
    }
    by_frame[o.frame].ground_truth.push_back(g);
  }
  for (const auto & d : dets) {
    by_frame[d.frame].detections.push_back(d.detection);
  }
  std::vector<FrameEval> frames;
  for (auto & [id, f] : by_frame) {
    frames.push_back(std::move(f));
  }
  std::string table = "difficulty,variant,ap,tp,fp,fn\n";
  std::vector<json> curves;
  for (const auto level : kEvalLevels) {
    try {
      const APResult ap = evaluate_frames(frames, level, opt.variant);
      table += std::string(to_string(level)) + "," + to_string(opt.variant) + "," + fmt("%.4f", 100.0 * ap.ap) + "," +
               std::to_string(ap.tp) + "," + std::to_string(ap.fp) + "," + std::to_string(ap.fn) + "\n";
      auto recs = pr_curve_records(ap, "detections", std::nullopt, level);
      curves.insert(curves.end(), recs.begin(), recs.end());
    } catch (const NoGroundTruth &) {
      log << "warning: no ground truth at " << to_string(level) << "\n";
      table += std::string(to_string(level)) + "," + to_string(opt.variant) + ",,,,\n";
    }
  }
  OutputFiles files{{"ap.csv", table}, {"pr_curves.jsonl", to_jsonl(curves)}};
  const json config = {{"difficulty_variant", to_string(opt.variant)}, {"iou_threshold", kBevIouThreshold}};
  write_outputs(
    opt.out_dir, files,
    make_manifest("evaluate", config, {}, {opt.detections.string(), opt.ground_truth.string()}, files));
  return kExitOk;
}

int cmd_heatmap(const HeatmapOptions & opt, std::ostream & log)
{
  ExperimentConfig cfg;
  if (opt.config) {
    try {
      cfg = load_experiment_config(*opt.config);
    } catch (const Error & e) {
      log << "error: " << e.what() << "\n";
      return kExitParse;
    }
  }
  LoadReport report;
  const Dataset ds = load_dataset(opt.dataset, report);
  report_load(report, log);
  if (!report.errors.empty()) {
    return kExitParse;
  }
  if (std::find(ds.frames.begin(), ds.frames.end(), opt.frame) == ds.frames.end()) {
    log << "error: frame " << opt.frame << " not found\n";
    return kExitParse;
  }
  const CropRange crop;
  OutputFiles files;
  for (const auto & obj : ds.objects) {
    if (obj.frame != opt.frame || obj.class_name == "DontCare") {
      continue;
    }
    try {
      const LabelPosterior post = laplace_posterior(obj.label, obj.points, cfg.generative);
      const DensityGrid grid = render_corner_density(obj.label, post.covariance, crop);
      const std::string stem = obj.frame + "_" + std::to_string(obj.index);
      files[stem + ".pgm"] = to_pgm(grid, obj.points);
      files[stem + ".csv"] = to_csv(grid);
      std::string pts = "x,y\n";
      char line[96];
      for (const Vec2 p : obj.points.points) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g\n", p.x, p.y);
        pts += line;
      }
      files[stem + "_points.csv"] = pts;
    } catch (const std::exception & e) {
      log << "error: frame " << obj.frame << " object " << obj.index << ": " << e.what() << "\n";
      return kExitNumerical;
    }
  }
  const json config = {
    {"frame", opt.frame},
    {"generative", config_to_json(cfg)["generative"]},
    {"crop", {{"x", {crop.x_lo, crop.x_hi}}, {"y", {crop.y_lo, crop.y_hi}}, {"resolution", crop.resolution}}}};
  std::vector<std::string> inputs{opt.dataset.string()};
  if (opt.config) {
    inputs.push_back(opt.config->string());
  }
  write_outputs(opt.out_dir, files, make_manifest("heatmap", config, {}, inputs, files));
  return kExitOk;
}

int cmd_synth_gen(const SynthGenOptions & opt, std::ostream & log)
{
  ExperimentConfig cfg;
  try {
    if (opt.config) {
      cfg = load_experiment_config(*opt.config);
    }
  } catch (const Error & e) {
    log << "error: " << e.what() << "\n";
    return kExitParse;
  }
  if (opt.seed) {
    cfg.root_seed = *opt.seed;
  }
  std::vector<json> records;
  std::vector<std::uint64_t> seeds{cfg.root_seed};
  for (std::size_t i = 0; i < opt.scenes; ++i) {
    SceneConfig sc = cfg.scene;
    sc.seed = derive_seed(cfg.root_seed, i);
    const Scene scene = generate_scene(sc);
    char frame[32];
    std::snprintf(frame, sizeof(frame), "synth_%06zu", i);
    for (std::size_t k = 0; k < scene.objects.size(); ++k) {
      const SceneObject & o = scene.objects[k];
      ObjectRecord r;
      r.frame = frame;
      r.index = k;
      r.difficulty = o.difficulty;
      r.label = o.label;
      r.truth = o.truth;
      r.points = o.points;
      records.push_back(to_json(r));
    }
  }
  const std::string bytes = to_jsonl(records);
  json config = {{"scene", config_to_json(cfg)["scene"]}, {"scenes", opt.scenes}, {"root_seed", cfg.root_seed}};
  std::vector<std::string> inputs;
  if (opt.config) {
    inputs.push_back(opt.config->string());
  }
  OutputFiles files{{opt.out.filename().string(), bytes}};
  write_file_atomic(opt.out, bytes);
  write_file_atomic(manifest_path_for(opt.out), make_manifest("synth-gen", config, seeds, inputs, files).dump(2) + "\n");
  return kExitOk;
}

}  // namespace bevlu
