#ifndef CURSOR_AGENTS_H_
#define CURSOR_AGENTS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "cursor/env.h"
#include "cursor/rng.h"

namespace cursor {

// Scripted reference behaviours. They see the ground-truth box: they are
// fixtures for exercising rewards, not models.
enum class PolicyKind { kOracle, kNoisyOracle, kLazyStop, kRepeater, kDrifter, kRandomWalk };

struct PolicySpec {
  PolicyKind kind = PolicyKind::kOracle;
  // Noise sigma (px) for kNoisyOracle, step length (px) for kDrifter.
  double param = 0.0;

  friend bool operator==(const PolicySpec&, const PolicySpec&) = default;
};

inline constexpr double kDefaultNoiseSigma = 10.0;
inline constexpr double kDefaultDriftStep = 20.0;

// Accepts oracle | noisy[:sigma] | lazy | repeat | drift[:step] | random.
// Throws Error on anything else.
PolicySpec parse_policy_spec(std::string_view text);
std::string to_string(const PolicySpec& spec);

class Policy {
 public:
  virtual ~Policy() = default;

  // Raw reply text in the <think>/<answer> format.
  virtual std::string respond(const Observation& obs, const BBox& target) = 0;

  Response act(const Observation& obs, const BBox& target) {
    return parse_response(respond(obs, target), mode_);
  }

  ActionMode mode() const { return mode_; }

 protected:
  explicit Policy(ActionMode mode) : mode_(mode) {}

  // Formats an aim point as a Move (or as an offset in relative mode),
  // clamped to the screen.
  std::string move_to(const Observation& obs, double x, double y, std::string think) const;
  static std::string stop(std::string think);

 private:
  ActionMode mode_;
};

// One fresh policy per episode; `seed` feeds the policy's own RNG.
std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::uint64_t seed,
                                    ActionMode mode = ActionMode::kDirect);

// (x_min + x_max) / 2, rounded half away from zero.
Point box_centre(const BBox& b);

}  // namespace cursor

#endif  // CURSOR_AGENTS_H_
