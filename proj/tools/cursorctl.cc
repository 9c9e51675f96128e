// cursorctl: scene/probe generation, scripted rollouts, log scoring and
// evaluation, and CCF crop geometry.
//
// Exit codes: 0 success, 1 validation failure, 2 I/O or format error.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "cursor/agents.h"
#include "cursor/ccf.h"
#include "cursor/env.h"
#include "cursor/error.h"
#include "cursor/harness.h"
#include "cursor/json_io.h"
#include "cursor/rng.h"
#include "cursor/scene.h"
#include "cursor/synth.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct RunArgs {
  std::string scenes;
  std::string policy = "oracle";
  int n = 1;
  int max_steps = 4;
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string mode = "direct";
  bool ccf = false;
  int budget_w = 1920;
  int budget_h = 1080;
  double w_p = 0.2;
  std::optional<double> w_fs;
};

struct GenScenesArgs {
  std::string out;
  int count = 100;
  std::uint64_t seed = 0;
  int width = 1280;
  int height = 720;
  int targets = 1;
  int distractors = 4;
  int min_size = 8;
  int max_size = 64;
};

struct GenProbeArgs {
  std::string out;
  int canvas_w = 1000;
  int canvas_h = 1000;
  int box_w = 120;
  int box_h = 120;
  int rows = 5;
  int cols = 5;
  int n_outside = 5;
  std::uint64_t seed = 0;
  bool no_images = false;
};

struct HeatmapArgs {
  std::string manifest;
  std::string answers;
  std::string out = "-";
  std::string png;
};

struct CropArgs {
  int width = 0;
  int height = 0;
  int pred_x = 0;
  int pred_y = 0;
  int budget_w = 1920;
  int budget_h = 1080;
};

// Writes to a file, or stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw cursor::IoError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cursor::IoError("cannot open " + path);
  return in;
}

int cmd_run(const RunArgs& a) {
  cursor::RunOptions options;
  options.episode.max_steps = a.max_steps;
  options.episode.action_mode =
      a.mode == "relative" ? cursor::ActionMode::kRelative : cursor::ActionMode::kDirect;
  options.weights.penalty = a.w_p;
  options.weights.false_stop = a.w_fs;
  options.weights.validate();
  options.ccf = a.ccf;
  options.budget = {a.budget_w, a.budget_h};
  const cursor::PolicySpec spec = cursor::parse_policy_spec(a.policy);
  const std::string name = cursor::to_string(spec);

  const auto scenes = cursor::load_scene_dir(a.scenes);
  if (scenes.empty()) throw cursor::IoError("no scenes in " + a.scenes);
  const cursor::Environment env;
  Output out(a.out);
  for (std::size_t si = 0; si < scenes.size(); ++si) {
    const std::uint64_t scene_seed = cursor::substream_seed(a.seed, si);
    for (std::size_t ti = 0; ti < scenes[si]->annotations.size(); ++ti) {
      const std::uint64_t target_seed = cursor::substream_seed(scene_seed, ti);
      if (a.n > 1) {
        const cursor::GroupRollout g =
            cursor::rollout_group(env, scenes[si], ti, spec, a.n, target_seed, options);
        for (const auto& r : g.records) out.stream() << cursor::serialize(r) << '\n';
      } else {
        auto policy = cursor::make_policy(spec, target_seed, options.episode.action_mode);
        out.stream() << cursor::serialize(
                            cursor::run_episode(env, scenes[si], ti, *policy, name, options))
                     << '\n';
      }
    }
  }
  return 0;
}

int cmd_score(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  long long records = 0, mismatches = 0, line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    cursor::TrajectoryRecord r;
    try {
      r = cursor::parse_record(line);
    } catch (const cursor::IoError& e) {
      throw cursor::IoError("line " + std::to_string(line_no) + ": " + e.what());
    }
    ++records;
    if (cursor::recompute_reward(r) != r.reward) {
      ++mismatches;
      std::cerr << "line " << line_no << ": stored reward differs from recomputation\n";
    }
  }
  ordered_json j;
  j["records"] = records;
  j["mismatches"] = mismatches;
  std::cout << j.dump() << '\n';
  return mismatches == 0 ? 0 : kExitValidation;
}

int cmd_eval(const std::string& path, const std::string& by) {
  if (!by.empty() && by != "tag") throw cursor::Error("--by accepts only 'tag'");
  std::ifstream in = open_input(path);
  std::cout << cursor::metrics_json(cursor::evaluate(in, by == "tag")) << '\n';
  return 0;
}

int cmd_gen_scenes(const GenScenesArgs& a) {
  const fs::path dir(a.out);
  fs::create_directories(dir);
  std::ofstream manifest(dir / "manifest.jsonl", std::ios::binary);
  if (!manifest) throw cursor::IoError("cannot write manifest in " + a.out);
  for (int i = 0; i < a.count; ++i) {
    cursor::SceneParams p;
    p.size = {a.width, a.height};
    p.n_targets = a.targets;
    p.n_distractors = a.distractors;
    p.min_target = a.min_size;
    p.max_target = a.max_size;
    p.seed = cursor::substream_seed(a.seed, static_cast<std::uint64_t>(i));
    char id[32];
    std::snprintf(id, sizeof id, "scene-%05d", i);
    p.id = id;
    const cursor::Scene scene = cursor::gen_scene(p);
    cursor::save_scene(dir, scene);
    manifest << cursor::scene_manifest_line(scene) << '\n';
  }
  return 0;
}

int cmd_gen_probe(const GenProbeArgs& a) {
  const fs::path dir(a.out);
  fs::create_directories(dir);
  const cursor::CursorSprite sprite = cursor::CursorSprite::arrow();
  cursor::ProbeParams p;
  p.canvas = {a.canvas_w, a.canvas_h};
  p.box = {a.box_w, a.box_h};
  p.rows = a.rows;
  p.cols = a.cols;
  p.n_outside = a.n_outside;
  p.seed = a.seed;
  const auto cases = cursor::gen_probe_grid(p, sprite);
  std::ofstream manifest(dir / "manifest.jsonl", std::ios::binary);
  if (!manifest) throw cursor::IoError("cannot write manifest in " + a.out);
  for (const cursor::ProbeCase& c : cases) {
    const std::string file = c.id + ".png";
    if (!a.no_images) cursor::write_png(dir / file, cursor::render_probe(c, p.canvas, sprite));
    ordered_json j;
    j["id"] = c.id;
    j["file"] = file;
    j["box"] = cursor::to_json(c.box);
    j["cursor"] = cursor::to_json(c.cursor);
    j["label"] = c.inside ? "inside" : "outside";
    j["cell"] = ordered_json::array({c.row, c.col});
    manifest << j.dump() << '\n';
  }
  return 0;
}

bool parse_answer(std::string s, long long line_no) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (s == "yes" || s == "1" || s == "true" || s == "inside") return true;
  if (s == "no" || s == "0" || s == "false" || s == "outside") return false;
  throw cursor::IoError("answers line " + std::to_string(line_no) + ": expected yes/no");
}

int cmd_probe_heatmap(const HeatmapArgs& a) {
  std::vector<cursor::ProbeCase> cases;
  {
    std::ifstream in = open_input(a.manifest);
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        const ordered_json j = ordered_json::parse(line);
        cursor::ProbeCase c;
        c.id = j.at("id").get<std::string>();
        c.box = cursor::bbox_from_json(j.at("box"));
        c.cursor = cursor::point_from_json(j.at("cursor"));
        c.inside = j.at("label").get<std::string>() == "inside";
        c.row = j.at("cell").at(0).get<int>();
        c.col = j.at("cell").at(1).get<int>();
        cases.push_back(std::move(c));
      } catch (const nlohmann::json::exception& e) {
        throw cursor::IoError("manifest line " + std::to_string(line_no) + ": " + e.what());
      }
    }
  }
  std::vector<bool> answers;
  {
    std::ifstream in = open_input(a.answers);
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      answers.push_back(parse_answer(line, line_no));
    }
  }
  int rows = 0, cols = 0;
  for (const auto& c : cases) {
    rows = std::max(rows, c.row + 1);
    cols = std::max(cols, c.col + 1);
  }
  const cursor::Heatmap h = cursor::probe_f1_heatmap(cases, answers, rows, cols);
  Output out(a.out);
  out.stream() << cursor::heatmap_csv(h);
  if (!a.png.empty()) cursor::write_heatmap_png(a.png, h);
  return 0;
}

int cmd_ccf_crop(const CropArgs& a) {
  const cursor::ImageSize full{a.width, a.height};
  const cursor::Point pred{a.pred_x, a.pred_y};
  if (!cursor::in_bounds(pred, full)) throw cursor::Error("prediction outside the image");
  const cursor::CropWindow w = cursor::crop_window(full, pred, {a.budget_w, a.budget_h});
  ordered_json j;
  j["origin"] = cursor::to_json(w.origin);
  j["size"] = cursor::to_json(w.size);
  std::cout << j.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interactive cursor grounding environment tools"};
  app.set_config("--config", "", "INI/TOML file with option values; command-line flags win");
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Roll out a scripted policy over a scene directory");
  run_cmd->add_option("--scenes", run.scenes, "Directory of <id>.png + <id>.json scenes")
      ->required();
  run_cmd->add_option("--policy", run.policy, "oracle|noisy[:sigma]|lazy|repeat|drift[:step]|random");
  run_cmd->add_option("--n", run.n, "Trajectories per instruction (>1 rolls out GRPO groups)")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--max-steps", run.max_steps, "Step budget per episode")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run.seed, "Master seed");
  run_cmd->add_option("--out", run.out, "Trajectory log path, '-' for stdout");
  run_cmd->add_option("--mode", run.mode, "Action mode")
      ->check(CLI::IsMember({"direct", "relative"}));
  run_cmd->add_flag("--ccf", run.ccf, "Cursor-centric focusing for screens above the budget");
  run_cmd->add_option("--budget-w", run.budget_w)->check(CLI::PositiveNumber);
  run_cmd->add_option("--budget-h", run.budget_h)->check(CLI::PositiveNumber);
  run_cmd->add_option("--w-p", run.w_p, "Trajectory penalty weight");
  run_cmd->add_option("--w-fs", run.w_fs, "Separate false-stop penalty weight");

  std::string score_in;
  auto* score_cmd = app.add_subcommand("score", "Recompute and verify logged rewards");
  score_cmd->add_option("--in", score_in, "Trajectory log")->required();

  std::string eval_in, eval_by;
  auto* eval_cmd = app.add_subcommand("eval", "Grounding metrics over a trajectory log");
  eval_cmd->add_option("--in", eval_in, "Trajectory log")->required();
  eval_cmd->add_option("--by", eval_by, "Breakdown key (tag)");

  GenScenesArgs gs;
  auto* gs_cmd = app.add_subcommand("gen-scenes", "Generate synthetic scenes");
  gs_cmd->add_option("--out", gs.out, "Output directory")->required();
  gs_cmd->add_option("--count", gs.count)->check(CLI::PositiveNumber);
  gs_cmd->add_option("--seed", gs.seed);
  gs_cmd->add_option("--width", gs.width)->check(CLI::PositiveNumber);
  gs_cmd->add_option("--height", gs.height)->check(CLI::PositiveNumber);
  gs_cmd->add_option("--targets", gs.targets)->check(CLI::PositiveNumber);
  gs_cmd->add_option("--distractors", gs.distractors)->check(CLI::NonNegativeNumber);
  gs_cmd->add_option("--min-size", gs.min_size)->check(CLI::PositiveNumber);
  gs_cmd->add_option("--max-size", gs.max_size)->check(CLI::PositiveNumber);

  GenProbeArgs gp;
  auto* gp_cmd = app.add_subcommand("gen-probe", "Generate cursor-in-box probe cases");
  gp_cmd->add_option("--out", gp.out, "Output directory")->required();
  gp_cmd->add_option("--canvas-w", gp.canvas_w)->check(CLI::PositiveNumber);
  gp_cmd->add_option("--canvas-h", gp.canvas_h)->check(CLI::PositiveNumber);
  gp_cmd->add_option("--box-w", gp.box_w)->check(CLI::PositiveNumber);
  gp_cmd->add_option("--box-h", gp.box_h)->check(CLI::PositiveNumber);
  gp_cmd->add_option("--rows", gp.rows)->check(CLI::PositiveNumber);
  gp_cmd->add_option("--cols", gp.cols)->check(CLI::PositiveNumber);
  gp_cmd->add_option("--n-outside", gp.n_outside)->check(CLI::NonNegativeNumber);
  gp_cmd->add_option("--seed", gp.seed);
  gp_cmd->add_flag("--no-images", gp.no_images, "Write only the manifest");

  HeatmapArgs hm;
  auto* hm_cmd = app.add_subcommand("probe-heatmap", "Per-cell F1 of yes/no probe answers");
  hm_cmd->add_option("--manifest", hm.manifest, "manifest.jsonl from gen-probe")->required();
  hm_cmd->add_option("--answers", hm.answers, "One yes/no per line, manifest order")->required();
  hm_cmd->add_option("--out", hm.out, "CSV path, '-' for stdout");
  hm_cmd->add_option("--png", hm.png, "Optional grayscale heatmap PNG");

  CropArgs ca;
  auto* ca_cmd = app.add_subcommand("ccf-crop", "Print the focus window for a prediction");
  ca_cmd->add_option("--width", ca.width)->required()->check(CLI::PositiveNumber);
  ca_cmd->add_option("--height", ca.height)->required()->check(CLI::PositiveNumber);
  ca_cmd->add_option("--pred-x", ca.pred_x)->required();
  ca_cmd->add_option("--pred-y", ca.pred_y)->required();
  ca_cmd->add_option("--budget-w", ca.budget_w)->check(CLI::PositiveNumber);
  ca_cmd->add_option("--budget-h", ca.budget_h)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitIo;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*score_cmd) return cmd_score(score_in);
    if (*eval_cmd) return cmd_eval(eval_in, eval_by);
    if (*gs_cmd) return cmd_gen_scenes(gs);
    if (*gp_cmd) return cmd_gen_probe(gp);
    if (*hm_cmd) return cmd_probe_heatmap(hm);
    if (*ca_cmd) return cmd_ccf_crop(ca);
  } catch (const cursor::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const cursor::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
