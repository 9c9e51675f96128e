#ifndef CURSOR_ENV_H_
#define CURSOR_ENV_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cursor/geometry.h"
#include "cursor/image.h"
#include "cursor/scene.h"
#include "cursor/sprite.h"

namespace cursor {

// Absolute coordinate prediction.
struct Move {
  Point to;
  friend bool operator==(const Move&, const Move&) = default;
};

// Offset from the current cursor; +x is right and +y is down.
struct RelativeMove {
  int dx = 0;
  int dy = 0;
  friend bool operator==(const RelativeMove&, const RelativeMove&) = default;
};

struct Stop {
  friend bool operator==(const Stop&, const Stop&) = default;
};

using Action = std::variant<Move, RelativeMove, Stop>;

enum class ActionKind { kMove, kRelativeMove, kStop };

ActionKind kind_of(const Action& a);
inline bool is_stop(const Action& a) { return std::holds_alternative<Stop>(a); }

std::string_view to_string(ActionKind k);
std::optional<ActionKind> action_kind_from_string(std::string_view s);

// One parsed model reply. `format_ok` is false when the raw text did not
// match `<think>...</think><answer>...</answer>`; the action is then Stop.
struct Response {
  std::string think;
  Action action = Stop{};
  bool format_ok = true;

  friend bool operator==(const Response&, const Response&) = default;
};

enum class ActionMode { kDirect, kRelative };

struct EpisodeConfig {
  int max_steps = 4;
  // Unset starts the cursor at the image centre.
  std::optional<Point> initial_cursor;
  ActionMode action_mode = ActionMode::kDirect;
  // When false, a move that leaves the screen is an error instead.
  bool clamp_out_of_bounds = true;
};

struct TrajectoryStep {
  Action action;
  // Cursor after the step was applied.
  Point position;
  bool format_ok = true;
  std::string think;

  friend bool operator==(const TrajectoryStep&, const TrajectoryStep&) = default;
};

// p_0 = initial, p_t = steps[t-1].position.
struct Trajectory {
  Point initial;
  std::vector<TrajectoryStep> steps;
  bool stopped = false;
  bool done = false;

  int length() const { return static_cast<int>(steps.size()); }
  Point position(int t) const { return t == 0 ? initial : steps[t - 1].position; }
  Point final_position() const { return position(length()); }
  std::vector<Point> positions() const;
  // Positions produced by Move/RelativeMove steps, in order (excludes p_0 and
  // the unchanged cursor recorded for Stop).
  std::vector<Point> predictions() const;
  bool all_formats_ok() const;
  int move_count() const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct EpisodeState {
  std::shared_ptr<const Scene> scene;
  BBox target;
  EpisodeConfig config;
  Point cursor;
  int step_index = 0;
  Trajectory trajectory;

  bool done() const { return trajectory.done; }
  bool stopped() const { return trajectory.stopped; }
};

struct Observation {
  Image image;
  Point cursor;
  int step_index = 0;
};

struct StepResult {
  Observation observation;
  bool done = false;
};

Point clamp(Point p, ImageSize s);

// Accepts exactly `<think>T</think><answer>A</answer>` with surrounding
// whitespace, where A is `STOP` or `(x, y)` (zero or one space after the
// comma). Direct mode accepts nonnegative integers; relative mode also
// accepts a leading minus. Never throws.
Response parse_response(std::string_view text, ActionMode mode = ActionMode::kDirect);
std::string format_response(const Response& r);

// Grounding prediction of a finished episode; throws if not done.
Point final_prediction(const EpisodeState& state);

class Environment {
 public:
  explicit Environment(CursorSprite sprite = CursorSprite::arrow())
      : sprite_(std::move(sprite)) {}

  struct Reset {
    EpisodeState state;
    Observation observation;
  };

  // Throws Error("unknown target") for a bad index.
  Reset reset(std::shared_ptr<const Scene> scene, std::size_t target_index,
              const EpisodeConfig& config) const;
  // As reset, with an explicit target box that need not lie on the scene.
  Reset start(std::shared_ptr<const Scene> scene, const BBox& target,
              const EpisodeConfig& config) const;

  // Applies one response. Every call consumes one step of the budget.
  StepResult step(EpisodeState& state, const Response& response) const;

  Observation observe(const EpisodeState& state) const;

  const CursorSprite& sprite() const { return sprite_; }

 private:
  CursorSprite sprite_;
};

}  // namespace cursor

#endif  // CURSOR_ENV_H_
