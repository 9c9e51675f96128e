#ifndef CURSOR_HARNESS_H_
#define CURSOR_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cursor/agents.h"
#include "cursor/ccf.h"
#include "cursor/env.h"
#include "cursor/grpo.h"
#include "cursor/reward.h"

namespace cursor {

struct StepRecord {
  Point position;
  ActionKind action = ActionKind::kStop;
  // Coordinates as emitted: absolute for Move, offset for RelativeMove.
  std::optional<Point> raw;
  bool format_ok = true;
  std::size_t think_length = 0;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct CcfRecord {
  Point coarse;
  bool coarse_format_ok = true;
  CropWindow window;
  bool target_in_focus = true;

  friend bool operator==(const CcfRecord&, const CcfRecord&) = default;
};

struct GroupInfo {
  int index = 0;
  int size = 0;
  double advantage = 0.0;
  bool kept = false;

  friend bool operator==(const GroupInfo&, const GroupInfo&) = default;
};

// One episode, self-contained: the reward can be recomputed from it alone.
// Serialized as one JSON object per line; field names are listed in README.md.
struct TrajectoryRecord {
  std::string scene_id;
  int target_index = 0;
  std::string instruction;
  std::string tag;
  BBox box;
  ImageSize image_size;
  std::string policy;
  Point initial;
  std::vector<StepRecord> steps;
  bool stopped = false;
  RewardWeights weights;
  RewardBreakdown reward;
  std::optional<CcfRecord> ccf;
  std::optional<GroupInfo> group;

  Point final_position() const { return steps.empty() ? initial : steps.back().position; }
  int move_count() const;

  friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&) = default;
};

std::string serialize(const TrajectoryRecord& record);
// Throws IoError on malformed input. Unknown fields are ignored.
TrajectoryRecord parse_record(std::string_view line);

Trajectory to_trajectory(const TrajectoryRecord& record);
RewardBreakdown recompute_reward(const TrajectoryRecord& record);

struct RunOptions {
  EpisodeConfig episode;
  RewardWeights weights;
  // Cursor-centric focusing for screens larger than the budget.
  bool ccf = false;
  PixelBudget budget;
};

// Drives one episode to termination and scores it.
TrajectoryRecord run_episode(const Environment& env, std::shared_ptr<const Scene> scene,
                             std::size_t target_index, Policy& policy,
                             const std::string& policy_name, const RunOptions& options);

struct GroupRollout {
  Group group;
  std::vector<TrajectoryRecord> records;
};

// N independent trajectories for one instruction; trajectory i's policy is
// seeded with substream_seed(master_seed, i). Advantages are computed over
// R_total and the group is passed through the online filter.
GroupRollout rollout_group(const Environment& env, std::shared_ptr<const Scene> scene,
                           std::size_t target_index, const PolicySpec& spec, int n,
                           std::uint64_t master_seed, const RunOptions& options);

struct Metrics {
  long long count = 0;
  double accuracy = 0.0;
  double success_rate = 0.0;
  // Movement steps count Move actions only; a trailing STOP is not one.
  double multi_step_fraction = 0.0;
  double avg_steps = 0.0;
  // Same, counting a focused run's coarse step as a movement.
  double multi_step_fraction_with_coarse = 0.0;
  double avg_steps_with_coarse = 0.0;
  // Mean target area (pixels) of records with <= 1 and > 1 movement steps.
  std::optional<double> mean_target_size_onestep;
  std::optional<double> mean_target_size_multistep;
  long long focused_count = 0;
  long long outside_focus_count = 0;
  std::map<std::string, Metrics> by_tag;
};

// Order-independent: every statistic is a ratio of exact integer sums.
class MetricsAccumulator {
 public:
  void add(const TrajectoryRecord& record);
  // Throws Error("no records") when nothing was added.
  Metrics finish(bool with_tags = true) const;

 private:
  struct Sums {
    long long count = 0, hits = 0, successes = 0, multi = 0, moves = 0;
    long long multi_coarse = 0, moves_coarse = 0;
    long long one_count = 0, one_area = 0, multi_area = 0;
    long long focused = 0, outside_focus = 0;
    void add(const TrajectoryRecord& r);
    Metrics metrics() const;
  };
  Sums all_;
  std::map<std::string, Sums> tags_;
};

// Single pass over a line-delimited log; blank lines are skipped. Throws
// IoError naming the line number for malformed records.
Metrics evaluate(std::istream& log, bool with_tags = true);

std::string metrics_json(const Metrics& m);

}  // namespace cursor

#endif  // CURSOR_HARNESS_H_
