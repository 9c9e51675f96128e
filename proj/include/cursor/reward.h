#ifndef CURSOR_REWARD_H_
#define CURSOR_REWARD_H_

#include <optional>

#include "cursor/env.h"
#include "cursor/geometry.h"

namespace cursor {

struct RewardWeights {
  // Weight shared by the four trajectory penalties.
  double penalty = 0.2;
  // Separate weight for the false-stop penalty when set (e.g. 0.5).
  std::optional<double> false_stop;
  double mix_trajectory = 0.9;
  double mix_format = 0.1;

  double false_stop_weight() const { return false_stop.value_or(penalty); }
  // Throws Error on negative weights or mixes that do not sum to 1.
  void validate() const;

  friend bool operator==(const RewardWeights&, const RewardWeights&) = default;
};

struct RewardBreakdown {
  double position = 0.0;  // r_p at the final cursor
  int false_stop = 0;
  int false_move = 0;
  int false_direction = 0;
  int repeated_position = 0;
  double trajectory = 0.0;  // R_T
  int format = 0;           // R_format
  double total = 0.0;       // R_total

  int penalty_count() const {
    return false_stop + false_move + false_direction + repeated_position;
  }

  friend bool operator==(const RewardBreakdown&, const RewardBreakdown&) = default;
};

// STOP issued with the final cursor off target. Truncated episodes never fire.
int false_stop(const Trajectory& traj, const BBox& target);

// Some earlier position p_t (t < T, p_0 included) was on target but p_T is not.
int false_move(const Trajectory& traj, const BBox& target);

// p_T is strictly further from the box than the first prediction p_1.
// Without any prediction p_1 is taken as p_0, which never fires.
int false_direction(const Trajectory& traj, const BBox& target, ImageSize size);

// Two predictions land on the same pixel. p_0 is not a prediction.
int repeated_position(const Trajectory& traj);

RewardBreakdown trajectory_reward(const Trajectory& traj, const BBox& target, ImageSize size,
                                  const RewardWeights& weights = {});

inline RewardBreakdown trajectory_reward(const EpisodeState& state,
                                         const RewardWeights& weights = {}) {
  return trajectory_reward(state.trajectory, state.target, state.scene->size(), weights);
}

}  // namespace cursor

#endif  // CURSOR_REWARD_H_
