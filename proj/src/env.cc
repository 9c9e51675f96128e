#include "cursor/env.h"

#include <algorithm>
#include <charconv>
#include <limits>

#include "cursor/error.h"

namespace cursor {
namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Consumes an integer from the front of `s`.
std::optional<int> take_int(std::string_view& s, bool allow_negative) {
  std::size_t n = 0;
  if (allow_negative && n < s.size() && s[n] == '-') ++n;
  const std::size_t digits_begin = n;
  while (n < s.size() && s[n] >= '0' && s[n] <= '9') ++n;
  if (n == digits_begin) return std::nullopt;
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + n, v);
  if (ec != std::errc() || ptr != s.data() + n) return std::nullopt;
  s.remove_prefix(n);
  return v;
}

bool take(std::string_view& s, std::string_view prefix) {
  if (!s.starts_with(prefix)) return false;
  s.remove_prefix(prefix.size());
  return true;
}

std::optional<Action> parse_answer(std::string_view a, ActionMode mode) {
  if (a == "STOP") return Stop{};
  const bool relative = mode == ActionMode::kRelative;
  if (!take(a, "(")) return std::nullopt;
  const auto x = take_int(a, relative);
  if (!x || !take(a, ",")) return std::nullopt;
  take(a, " ");
  const auto y = take_int(a, relative);
  if (!y || a != ")") return std::nullopt;
  if (relative) return RelativeMove{*x, *y};
  return Move{{*x, *y}};
}

}  // namespace

ActionKind kind_of(const Action& a) {
  switch (a.index()) {
    case 0:
      return ActionKind::kMove;
    case 1:
      return ActionKind::kRelativeMove;
    default:
      return ActionKind::kStop;
  }
}

std::string_view to_string(ActionKind k) {
  switch (k) {
    case ActionKind::kMove:
      return "move";
    case ActionKind::kRelativeMove:
      return "relative";
    case ActionKind::kStop:
      return "stop";
  }
  return "stop";
}

std::optional<ActionKind> action_kind_from_string(std::string_view s) {
  if (s == "move") return ActionKind::kMove;
  if (s == "relative") return ActionKind::kRelativeMove;
  if (s == "stop") return ActionKind::kStop;
  return std::nullopt;
}

std::vector<Point> Trajectory::positions() const {
  std::vector<Point> out;
  out.reserve(steps.size() + 1);
  out.push_back(initial);
  for (const TrajectoryStep& s : steps) out.push_back(s.position);
  return out;
}

std::vector<Point> Trajectory::predictions() const {
  std::vector<Point> out;
  for (const TrajectoryStep& s : steps) {
    if (!is_stop(s.action)) out.push_back(s.position);
  }
  return out;
}

bool Trajectory::all_formats_ok() const {
  return std::all_of(steps.begin(), steps.end(),
                     [](const TrajectoryStep& s) { return s.format_ok; });
}

int Trajectory::move_count() const {
  return static_cast<int>(std::count_if(steps.begin(), steps.end(),
                                        [](const TrajectoryStep& s) { return !is_stop(s.action); }));
}

Point clamp(Point p, ImageSize s) {
  return {std::clamp(p.x, 0, s.w - 1), std::clamp(p.y, 0, s.h - 1)};
}

Response parse_response(std::string_view text, ActionMode mode) {
  Response malformed{"", Stop{}, false};
  std::string_view s = trim(text);
  if (!take(s, kThinkOpen)) return malformed;
  const std::size_t close = s.find(kThinkClose);
  if (close == std::string_view::npos) return malformed;
  const std::string_view think = s.substr(0, close);
  s.remove_prefix(close + kThinkClose.size());
  if (!take(s, kAnswerOpen) || !s.ends_with(kAnswerClose)) return malformed;
  s.remove_suffix(kAnswerClose.size());
  const std::optional<Action> action = parse_answer(s, mode);
  if (!action) return malformed;
  return {std::string(think), *action, true};
}

std::string format_response(const Response& r) {
  std::string answer;
  if (const auto* m = std::get_if<Move>(&r.action)) {
    answer = "(" + std::to_string(m->to.x) + ", " + std::to_string(m->to.y) + ")";
  } else if (const auto* rm = std::get_if<RelativeMove>(&r.action)) {
    answer = "(" + std::to_string(rm->dx) + ", " + std::to_string(rm->dy) + ")";
  } else {
    answer = "STOP";
  }
  std::string out;
  out.reserve(r.think.size() + answer.size() + 40);
  out.append(kThinkOpen).append(r.think).append(kThinkClose);
  out.append(kAnswerOpen).append(answer).append(kAnswerClose);
  return out;
}

Point final_prediction(const EpisodeState& state) {
  if (!state.done()) throw Error("episode not finished");
  return state.trajectory.final_position();
}

Environment::Reset Environment::reset(std::shared_ptr<const Scene> scene,
                                      std::size_t target_index,
                                      const EpisodeConfig& config) const {
  if (!scene || target_index >= scene->annotations.size()) throw Error("unknown target");
  const BBox target = scene->annotations[target_index].target;
  return start(std::move(scene), target, config);
}

Environment::Reset Environment::start(std::shared_ptr<const Scene> scene, const BBox& target,
                                      const EpisodeConfig& config) const {
  if (!scene) throw Error("no scene");
  if (config.max_steps < 1) throw Error("max_steps must be at least 1");
  const ImageSize s = scene->size();
  EpisodeState state;
  state.target = target;
  state.config = config;
  state.cursor = config.initial_cursor ? clamp(*config.initial_cursor, s)
                                       : Point{s.w / 2, s.h / 2};
  state.trajectory.initial = state.cursor;
  state.scene = std::move(scene);
  Observation obs = observe(state);
  return {std::move(state), std::move(obs)};
}

StepResult Environment::step(EpisodeState& state, const Response& response) const {
  if (state.done()) throw Error("episode finished");
  const ActionKind kind = kind_of(response.action);
  const bool relative = state.config.action_mode == ActionMode::kRelative;
  if ((kind == ActionKind::kMove && relative) ||
      (kind == ActionKind::kRelativeMove && !relative)) {
    throw Error("action mode mismatch");
  }

  const ImageSize s = state.scene->size();
  Point next = state.cursor;
  if (const auto* m = std::get_if<Move>(&response.action)) {
    next = m->to;
  } else if (const auto* rm = std::get_if<RelativeMove>(&response.action)) {
    // Widened so extreme offsets saturate instead of overflowing.
    auto shift = [](int v, int d) {
      const long long r = static_cast<long long>(v) + d;
      return static_cast<int>(std::clamp<long long>(r, std::numeric_limits<int>::min(),
                                                    std::numeric_limits<int>::max()));
    };
    next = {shift(state.cursor.x, rm->dx), shift(state.cursor.y, rm->dy)};
  }
  if (!in_bounds(next, s)) {
    if (!state.config.clamp_out_of_bounds) throw Error("move outside screen");
    next = clamp(next, s);
  }

  state.cursor = next;
  ++state.step_index;
  state.trajectory.steps.push_back({response.action, next, response.format_ok, response.think});
  if (kind == ActionKind::kStop) {
    state.trajectory.stopped = true;
    state.trajectory.done = true;
  }
  if (state.step_index >= state.config.max_steps) state.trajectory.done = true;

  return {observe(state), state.done()};
}

Observation Environment::observe(const EpisodeState& state) const {
  return {render_cursor(state.scene->image, sprite_, state.cursor), state.cursor,
          state.step_index};
}

}  // namespace cursor
