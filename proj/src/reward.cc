#include "cursor/reward.h"

#include <algorithm>
#include <cmath>

#include "cursor/error.h"

namespace cursor {

void RewardWeights::validate() const {
  if (penalty < 0 || false_stop_weight() < 0 || mix_trajectory < 0 || mix_format < 0) {
    throw Error("reward weights must be nonnegative");
  }
  if (std::abs(mix_trajectory + mix_format - 1.0) > 1e-12) {
    throw Error("reward mix must sum to 1");
  }
}

int false_stop(const Trajectory& traj, const BBox& target) {
  return traj.stopped && !contains(target, traj.final_position()) ? 1 : 0;
}

int false_move(const Trajectory& traj, const BBox& target) {
  if (contains(target, traj.final_position())) return 0;
  for (int t = 0; t < traj.length(); ++t) {
    if (contains(target, traj.position(t))) return 1;
  }
  return 0;
}

int false_direction(const Trajectory& traj, const BBox& target, ImageSize size) {
  const std::vector<Point> predictions = traj.predictions();
  const Point first = predictions.empty() ? traj.initial : predictions.front();
  return edge_distance(traj.final_position(), target, size) >
                 edge_distance(first, target, size)
             ? 1
             : 0;
}

int repeated_position(const Trajectory& traj) {
  std::vector<Point> p = traj.predictions();
  std::sort(p.begin(), p.end(),
            [](Point a, Point b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  return std::adjacent_find(p.begin(), p.end()) != p.end() ? 1 : 0;
}

RewardBreakdown trajectory_reward(const Trajectory& traj, const BBox& target, ImageSize size,
                                  const RewardWeights& weights) {
  weights.validate();
  RewardBreakdown r;
  r.position = position_reward(traj.final_position(), target, size);
  r.false_stop = false_stop(traj, target);
  r.false_move = false_move(traj, target);
  r.false_direction = false_direction(traj, target, size);
  r.repeated_position = repeated_position(traj);
  if (weights.false_stop) {
    r.trajectory = r.position -
                   weights.penalty * (r.false_direction + r.false_move + r.repeated_position) -
                   *weights.false_stop * r.false_stop;
  } else {
    r.trajectory = r.position - weights.penalty * r.penalty_count();
  }
  r.format = traj.all_formats_ok() ? 1 : 0;
  // Interpolation form of mix_trajectory * R_T + mix_format * R_format; the
  // two agree because the mixes sum to 1, and this one is exact at the ends.
  r.total = std::lerp(r.trajectory, static_cast<double>(r.format), weights.mix_format);
  return r;
}

}  // namespace cursor
