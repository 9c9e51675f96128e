#include "cursor/harness.h"

#include <algorithm>
#include <istream>

#include <nlohmann/json.hpp>

#include "cursor/error.h"
#include "cursor/json_io.h"
#include "cursor/rng.h"

namespace cursor {

using nlohmann::ordered_json;

namespace {

ordered_json weights_json(const RewardWeights& w) {
  ordered_json j;
  j["penalty"] = w.penalty;
  j["false_stop"] = w.false_stop ? ordered_json(*w.false_stop) : ordered_json(nullptr);
  j["mix_trajectory"] = w.mix_trajectory;
  j["mix_format"] = w.mix_format;
  return j;
}

RewardWeights weights_from_json(const ordered_json& j) {
  RewardWeights w;
  w.penalty = j.at("penalty").get<double>();
  if (j.contains("false_stop") && !j.at("false_stop").is_null()) {
    w.false_stop = j.at("false_stop").get<double>();
  }
  w.mix_trajectory = j.at("mix_trajectory").get<double>();
  w.mix_format = j.at("mix_format").get<double>();
  return w;
}

ordered_json reward_json(const RewardBreakdown& r) {
  ordered_json j;
  j["position"] = r.position;
  j["false_stop"] = r.false_stop;
  j["false_move"] = r.false_move;
  j["false_direction"] = r.false_direction;
  j["repeated_position"] = r.repeated_position;
  j["trajectory"] = r.trajectory;
  j["format"] = r.format;
  j["total"] = r.total;
  return j;
}

int bit_from_json(const ordered_json& j) {
  const int v = j.get<int>();
  if (v != 0 && v != 1) throw ordered_json::other_error::create(501, "expected 0 or 1", &j);
  return v;
}

RewardBreakdown reward_from_json(const ordered_json& j) {
  RewardBreakdown r;
  r.position = j.at("position").get<double>();
  r.false_stop = bit_from_json(j.at("false_stop"));
  r.false_move = bit_from_json(j.at("false_move"));
  r.false_direction = bit_from_json(j.at("false_direction"));
  r.repeated_position = bit_from_json(j.at("repeated_position"));
  r.trajectory = j.at("trajectory").get<double>();
  r.format = bit_from_json(j.at("format"));
  r.total = j.at("total").get<double>();
  return r;
}

StepRecord step_record(const TrajectoryStep& s) {
  StepRecord r;
  r.position = s.position;
  r.action = kind_of(s.action);
  if (const auto* m = std::get_if<Move>(&s.action)) r.raw = m->to;
  if (const auto* rm = std::get_if<RelativeMove>(&s.action)) r.raw = Point{rm->dx, rm->dy};
  r.format_ok = s.format_ok;
  r.think_length = s.think.size();
  return r;
}

TrajectoryRecord base_record(const Scene& scene, std::size_t target_index,
                             const std::string& policy_name, const RunOptions& options) {
  const Annotation& a = scene.annotations[target_index];
  TrajectoryRecord r;
  r.scene_id = scene.id;
  r.target_index = static_cast<int>(target_index);
  r.instruction = a.instruction;
  r.tag = a.tag;
  r.box = a.target;
  r.image_size = scene.size();
  r.policy = policy_name;
  r.weights = options.weights;
  return r;
}

void fill_from(TrajectoryRecord& r, const Trajectory& t) {
  r.initial = t.initial;
  r.steps.clear();
  for (const TrajectoryStep& s : t.steps) r.steps.push_back(step_record(s));
  r.stopped = t.stopped;
  r.reward = trajectory_reward(t, r.box, r.image_size, r.weights);
}

}  // namespace

int TrajectoryRecord::move_count() const {
  return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const StepRecord& s) {
    return s.action != ActionKind::kStop;
  }));
}

std::string serialize(const TrajectoryRecord& record) {
  ordered_json j;
  j["scene_id"] = record.scene_id;
  j["target_index"] = record.target_index;
  j["instruction"] = record.instruction;
  j["tag"] = record.tag;
  j["image_size"] = to_json(record.image_size);
  j["box"] = to_json(record.box);
  j["policy"] = record.policy;
  j["initial"] = to_json(record.initial);
  ordered_json steps = ordered_json::array();
  for (const StepRecord& s : record.steps) {
    ordered_json sj;
    sj["position"] = to_json(s.position);
    sj["action"] = std::string(to_string(s.action));
    sj["raw"] = s.raw ? to_json(*s.raw) : ordered_json(nullptr);
    sj["format_ok"] = s.format_ok;
    sj["think_length"] = s.think_length;
    steps.push_back(std::move(sj));
  }
  j["steps"] = std::move(steps);
  j["stopped"] = record.stopped;
  j["weights"] = weights_json(record.weights);
  j["reward"] = reward_json(record.reward);
  if (record.ccf) {
    ordered_json c;
    c["coarse"] = to_json(record.ccf->coarse);
    c["coarse_format_ok"] = record.ccf->coarse_format_ok;
    c["origin"] = to_json(record.ccf->window.origin);
    c["size"] = to_json(record.ccf->window.size);
    c["target_in_focus"] = record.ccf->target_in_focus;
    j["ccf"] = std::move(c);
  }
  if (record.group) {
    ordered_json g;
    g["index"] = record.group->index;
    g["size"] = record.group->size;
    g["advantage"] = record.group->advantage;
    g["kept"] = record.group->kept;
    j["group"] = std::move(g);
  }
  return j.dump();
}

TrajectoryRecord parse_record(std::string_view line) {
  TrajectoryRecord r;
  try {
    const ordered_json j = ordered_json::parse(line);
    r.scene_id = j.at("scene_id").get<std::string>();
    r.target_index = j.at("target_index").get<int>();
    r.instruction = j.at("instruction").get<std::string>();
    r.tag = j.value("tag", std::string());
    r.image_size = image_size_from_json(j.at("image_size"));
    r.box = bbox_from_json(j.at("box"));
    r.policy = j.value("policy", std::string());
    r.initial = point_from_json(j.at("initial"));
    for (const auto& sj : j.at("steps")) {
      StepRecord s;
      s.position = point_from_json(sj.at("position"));
      const auto kind = action_kind_from_string(sj.at("action").get<std::string>());
      if (!kind) throw IoError("unknown action kind");
      s.action = *kind;
      if (sj.contains("raw") && !sj.at("raw").is_null()) s.raw = point_from_json(sj.at("raw"));
      if ((s.action == ActionKind::kStop) == s.raw.has_value()) {
        throw IoError("raw coordinates must accompany exactly the move steps");
      }
      s.format_ok = sj.at("format_ok").get<bool>();
      s.think_length = sj.value("think_length", std::size_t{0});
      r.steps.push_back(s);
    }
    r.stopped = j.at("stopped").get<bool>();
    r.weights = weights_from_json(j.at("weights"));
    r.reward = reward_from_json(j.at("reward"));
    if (j.contains("ccf")) {
      const auto& c = j.at("ccf");
      CcfRecord cr;
      cr.coarse = point_from_json(c.at("coarse"));
      cr.coarse_format_ok = c.at("coarse_format_ok").get<bool>();
      cr.window.origin = point_from_json(c.at("origin"));
      cr.window.size = image_size_from_json(c.at("size"));
      cr.target_in_focus = c.at("target_in_focus").get<bool>();
      r.ccf = cr;
    }
    if (j.contains("group")) {
      const auto& g = j.at("group");
      r.group = GroupInfo{g.at("index").get<int>(), g.at("size").get<int>(),
                          g.at("advantage").get<double>(), g.at("kept").get<bool>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(e.what());
  }
  return r;
}

Trajectory to_trajectory(const TrajectoryRecord& record) {
  Trajectory t;
  t.initial = record.initial;
  for (const StepRecord& s : record.steps) {
    TrajectoryStep ts;
    switch (s.action) {
      case ActionKind::kMove:
        ts.action = Move{s.raw.value_or(s.position)};
        break;
      case ActionKind::kRelativeMove: {
        const Point d = s.raw.value_or(Point{});
        ts.action = RelativeMove{d.x, d.y};
        break;
      }
      case ActionKind::kStop:
        ts.action = Stop{};
        break;
    }
    ts.position = s.position;
    ts.format_ok = s.format_ok;
    t.steps.push_back(std::move(ts));
  }
  t.stopped = record.stopped;
  t.done = true;
  return t;
}

RewardBreakdown recompute_reward(const TrajectoryRecord& record) {
  return trajectory_reward(to_trajectory(record), record.box, record.image_size, record.weights);
}

TrajectoryRecord run_episode(const Environment& env, std::shared_ptr<const Scene> scene,
                             std::size_t target_index, Policy& policy,
                             const std::string& policy_name, const RunOptions& options) {
  if (!scene || target_index >= scene->annotations.size()) throw Error("unknown target");
  TrajectoryRecord record = base_record(*scene, target_index, policy_name, options);

  if (options.ccf) {
    const CcfOutcome out =
        ccf_ground(env, scene, target_index, policy, options.budget, options.episode);
    fill_from(record, out.trajectory);
    if (out.focused) {
      record.ccf = CcfRecord{out.coarse, out.coarse_format_ok, out.window, out.target_in_focus};
    }
    return record;
  }

  Environment::Reset episode = env.reset(scene, target_index, options.episode);
  Observation obs = std::move(episode.observation);
  while (!episode.state.done()) {
    obs = env.step(episode.state, policy.act(obs, episode.state.target)).observation;
  }
  fill_from(record, episode.state.trajectory);
  return record;
}

GroupRollout rollout_group(const Environment& env, std::shared_ptr<const Scene> scene,
                           std::size_t target_index, const PolicySpec& spec, int n,
                           std::uint64_t master_seed, const RunOptions& options) {
  if (n < 2) throw Error("group too small");
  if (!scene || target_index >= scene->annotations.size()) throw Error("unknown target");
  GroupRollout out;
  out.group.instruction_id = scene->id + "#" + std::to_string(target_index);
  out.group.target = scene->annotations[target_index].target;
  const std::string name = to_string(spec);
  for (int i = 0; i < n; ++i) {
    auto policy = make_policy(spec, substream_seed(master_seed, static_cast<std::uint64_t>(i)),
                              options.episode.action_mode);
    TrajectoryRecord record = run_episode(env, scene, target_index, *policy, name, options);
    out.group.members.push_back({to_trajectory(record), record.reward});
    out.records.push_back(std::move(record));
  }
  out.group.advantages = group_advantages(out.group.totals());
  online_filter(out.group);
  for (int i = 0; i < n; ++i) {
    out.records[i].group = GroupInfo{i, n, out.group.advantages[i], out.group.kept};
  }
  return out;
}

void MetricsAccumulator::Sums::add(const TrajectoryRecord& r) {
  const Point final = r.final_position();
  const bool hit = contains(r.box, final);
  const long long moves = r.move_count();
  const long long moves_coarse = moves + (r.ccf ? 1 : 0);
  ++count;
  hits += hit;
  successes += hit && r.stopped;
  multi += moves > 1;
  this->moves += moves;
  multi_coarse += moves_coarse > 1;
  this->moves_coarse += moves_coarse;
  if (moves > 1) {
    multi_area += r.box.area();
  } else {
    ++one_count;
    one_area += r.box.area();
  }
  if (r.ccf) {
    ++focused;
    outside_focus += !r.ccf->target_in_focus;
  }
}

Metrics MetricsAccumulator::Sums::metrics() const {
  Metrics m;
  const double n = static_cast<double>(count);
  m.count = count;
  m.accuracy = hits / n;
  m.success_rate = successes / n;
  m.multi_step_fraction = multi / n;
  m.avg_steps = moves / n;
  m.multi_step_fraction_with_coarse = multi_coarse / n;
  m.avg_steps_with_coarse = moves_coarse / n;
  if (one_count > 0) m.mean_target_size_onestep = static_cast<double>(one_area) / one_count;
  if (multi > 0) m.mean_target_size_multistep = static_cast<double>(multi_area) / multi;
  m.focused_count = focused;
  m.outside_focus_count = outside_focus;
  return m;
}

void MetricsAccumulator::add(const TrajectoryRecord& record) {
  all_.add(record);
  tags_[record.tag].add(record);
}

Metrics MetricsAccumulator::finish(bool with_tags) const {
  if (all_.count == 0) throw Error("no records");
  Metrics m = all_.metrics();
  if (with_tags) {
    for (const auto& [tag, sums] : tags_) m.by_tag.emplace(tag, sums.metrics());
  }
  return m;
}

Metrics evaluate(std::istream& log, bool with_tags) {
  MetricsAccumulator acc;
  std::string line;
  long long line_no = 0;
  while (std::getline(log, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      acc.add(parse_record(line));
    } catch (const IoError& e) {
      throw IoError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return acc.finish(with_tags);
}

namespace {

ordered_json metrics_object(const Metrics& m) {
  auto opt = [](const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
  };
  ordered_json j;
  j["count"] = m.count;
  j["accuracy"] = m.accuracy;
  j["success_rate"] = m.success_rate;
  j["multi_step_fraction"] = m.multi_step_fraction;
  j["avg_steps"] = m.avg_steps;
  j["multi_step_fraction_with_coarse"] = m.multi_step_fraction_with_coarse;
  j["avg_steps_with_coarse"] = m.avg_steps_with_coarse;
  j["mean_target_size_onestep"] = opt(m.mean_target_size_onestep);
  j["mean_target_size_multistep"] = opt(m.mean_target_size_multistep);
  j["focused_count"] = m.focused_count;
  j["outside_focus_count"] = m.outside_focus_count;
  if (!m.by_tag.empty()) {
    ordered_json tags;
    for (const auto& [tag, sub] : m.by_tag) tags[tag] = metrics_object(sub);
    j["by_tag"] = std::move(tags);
  }
  return j;
}

}  // namespace

std::string metrics_json(const Metrics& m) { return metrics_object(m).dump(2); }

}  // namespace cursor
