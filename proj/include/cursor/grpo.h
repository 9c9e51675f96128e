#ifndef CURSOR_GRPO_H_
#define CURSOR_GRPO_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cursor/env.h"
#include "cursor/reward.h"

namespace cursor {

inline constexpr double kAdvantageEpsilon = 1e-8;
inline constexpr int kDefaultGroupSize = 12;

// (R_i - mean) / (std + epsilon), population standard deviation.
// Throws Error("group too small") for fewer than two rewards.
std::vector<double> group_advantages(std::span<const double> rewards,
                                     double epsilon = kAdvantageEpsilon);

// In-box and explicitly stopped.
bool is_success(const Trajectory& traj, const BBox& target);

struct GroupMember {
  Trajectory trajectory;
  RewardBreakdown reward;
};

struct Group {
  std::string instruction_id;
  BBox target;
  std::vector<GroupMember> members;
  std::vector<double> advantages;
  bool kept = false;

  std::vector<double> totals() const;
  int success_count() const;
};

// A group carries signal iff it mixes successes and failures.
bool keep_group(int successes, int group_size);

// Sets and returns `group.kept`.
bool online_filter(Group& group,
                   const std::function<bool(const Trajectory&, const BBox&)>& success = is_success);

// Mean over trajectories of min(r A, clip(r, 1-eps, 1+eps) A) with
// r = exp(logp_new - logp_old). Log-probabilities are per-trajectory sums over
// all steps. No KL term.
double clipped_surrogate(std::span<const double> logp_new, std::span<const double> logp_old,
                         std::span<const double> advantages, double eps_clip);

}  // namespace cursor

#endif  // CURSOR_GRPO_H_
