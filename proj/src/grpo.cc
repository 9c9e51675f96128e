#include "cursor/grpo.h"

#include <algorithm>
#include <cmath>

#include "cursor/error.h"

namespace cursor {

std::vector<double> group_advantages(std::span<const double> rewards, double epsilon) {
  if (rewards.size() < 2) throw Error("group too small");
  const double n = static_cast<double>(rewards.size());
  // Shifted by the first reward so that a constant group has an exact mean.
  const double shift = rewards.front();
  double offset = 0.0;
  for (double r : rewards) offset += r - shift;
  const double mean = shift + offset / n;
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  const double denom = std::sqrt(var / n) + epsilon;

  std::vector<double> adv;
  adv.reserve(rewards.size());
  for (double r : rewards) adv.push_back((r - mean) / denom);
  return adv;
}

bool is_success(const Trajectory& traj, const BBox& target) {
  return traj.stopped && contains(target, traj.final_position());
}

std::vector<double> Group::totals() const {
  std::vector<double> t;
  t.reserve(members.size());
  for (const GroupMember& m : members) t.push_back(m.reward.total);
  return t;
}

int Group::success_count() const {
  return static_cast<int>(std::count_if(members.begin(), members.end(), [&](const GroupMember& m) {
    return is_success(m.trajectory, target);
  }));
}

bool keep_group(int successes, int group_size) {
  return successes >= 1 && successes <= group_size - 1;
}

bool online_filter(Group& group,
                   const std::function<bool(const Trajectory&, const BBox&)>& success) {
  int n = 0;
  for (const GroupMember& m : group.members) n += success(m.trajectory, group.target) ? 1 : 0;
  group.kept = keep_group(n, static_cast<int>(group.members.size()));
  return group.kept;
}

double clipped_surrogate(std::span<const double> logp_new, std::span<const double> logp_old,
                         std::span<const double> advantages, double eps_clip) {
  if (logp_new.size() != logp_old.size() || logp_new.size() != advantages.size()) {
    throw Error("length mismatch");
  }
  if (advantages.empty()) throw Error("empty batch");
  double sum = 0.0;
  for (std::size_t i = 0; i < advantages.size(); ++i) {
    const double ratio = std::exp(logp_new[i] - logp_old[i]);
    const double clipped = std::clamp(ratio, 1.0 - eps_clip, 1.0 + eps_clip);
    sum += std::min(ratio * advantages[i], clipped * advantages[i]);
  }
  return sum / static_cast<double>(advantages.size());
}

}  // namespace cursor
