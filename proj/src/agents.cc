#include "cursor/agents.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "cursor/error.h"

namespace cursor {
namespace {

std::string describe(Point p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

class Oracle final : public Policy {
 public:
  explicit Oracle(ActionMode mode) : Policy(mode) {}
  std::string respond(const Observation& obs, const BBox& target) override {
    const Point c = box_centre(target);
    if (obs.step_index == 0) {
      return move_to(obs, c.x, c.y, "The target centre is at " + describe(c) + ".");
    }
    return stop("The cursor is on the target.");
  }
};

class NoisyOracle final : public Policy {
 public:
  NoisyOracle(ActionMode mode, double sigma, std::uint64_t seed)
      : Policy(mode), sigma_(sigma), rng_(seed) {}

  std::string respond(const Observation& obs, const BBox& target) override {
    if (obs.step_index > 0 && contains(target, obs.cursor)) {
      return stop("The cursor hotspot is inside the target.");
    }
    const Point c = box_centre(target);
    const double x = rng_.normal(c.x, sigma_);
    const double y = rng_.normal(c.y, sigma_);
    return move_to(obs, x, y, "Aiming near " + describe(c) + ".");
  }

 private:
  double sigma_;
  Rng rng_;
};

class LazyStop final : public Policy {
 public:
  explicit LazyStop(ActionMode mode) : Policy(mode) {}
  std::string respond(const Observation&, const BBox&) override {
    return stop("Stopping without moving.");
  }
};

class Repeater final : public Policy {
 public:
  explicit Repeater(ActionMode mode) : Policy(mode) {}
  std::string respond(const Observation& obs, const BBox& target) override {
    const Point p = far_corner(obs.image.size, target);
    return move_to(obs, p.x, p.y, "Trying " + describe(p) + " again.");
  }

 private:
  // The screen corner furthest from the target centre.
  static Point far_corner(ImageSize s, const BBox& target) {
    const Point c = box_centre(target);
    const std::array<Point, 4> corners{{{0, 0}, {s.w - 1, 0}, {0, s.h - 1}, {s.w - 1, s.h - 1}}};
    auto dist2 = [&](Point p) {
      const double dx = p.x - c.x, dy = p.y - c.y;
      return dx * dx + dy * dy;
    };
    return *std::max_element(corners.begin(), corners.end(),
                             [&](Point a, Point b) { return dist2(a) < dist2(b); });
  }
};

class Drifter final : public Policy {
 public:
  Drifter(ActionMode mode, double step) : Policy(mode), step_(step) {}

  std::string respond(const Observation& obs, const BBox& target) override {
    const double cx = (static_cast<double>(target.x_min) + target.x_max) / 2.0;
    const double cy = (static_cast<double>(target.y_min) + target.y_max) / 2.0;
    double ux = obs.cursor.x - cx;
    double uy = obs.cursor.y - cy;
    if (ux == 0.0 && uy == 0.0) {
      // On the centre: head towards the middle of the screen, where there is room.
      ux = obs.image.size.w / 2.0 - cx;
      uy = obs.image.size.h / 2.0 - cy;
      if (ux == 0.0 && uy == 0.0) ux = 1.0;
    }
    const double norm = std::hypot(ux, uy);
    return move_to(obs, obs.cursor.x + step_ * ux / norm, obs.cursor.y + step_ * uy / norm,
                   "Moving away from the target.");
  }

 private:
  double step_;
};

class RandomWalk final : public Policy {
 public:
  RandomWalk(ActionMode mode, std::uint64_t seed) : Policy(mode), rng_(seed) {}

  std::string respond(const Observation& obs, const BBox&) override {
    const ImageSize s = obs.image.size;
    const auto x = static_cast<double>(rng_.uniform_int(0, s.w - 1));
    const auto y = static_cast<double>(rng_.uniform_int(0, s.h - 1));
    return move_to(obs, x, y, "Trying a random position.");
  }

 private:
  Rng rng_;
};

std::optional<double> parse_param(std::string_view s) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !(v >= 0) || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::string format_param(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

Point box_centre(const BBox& b) {
  return {static_cast<int>(std::lround((static_cast<double>(b.x_min) + b.x_max) / 2.0)),
          static_cast<int>(std::lround((static_cast<double>(b.y_min) + b.y_max) / 2.0))};
}

std::string Policy::move_to(const Observation& obs, double x, double y,
                            std::string think) const {
  const ImageSize s = obs.image.size;
  const Point aim = clamp({static_cast<int>(std::clamp(std::lround(x), -1L << 30, 1L << 30)),
                           static_cast<int>(std::clamp(std::lround(y), -1L << 30, 1L << 30))},
                          s);
  Response r;
  r.think = std::move(think);
  if (mode_ == ActionMode::kRelative) {
    r.action = RelativeMove{aim.x - obs.cursor.x, aim.y - obs.cursor.y};
  } else {
    r.action = Move{aim};
  }
  return format_response(r);
}

std::string Policy::stop(std::string think) {
  return format_response({std::move(think), Stop{}, true});
}

PolicySpec parse_policy_spec(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const bool has_arg = colon != std::string_view::npos;
  const std::string_view arg = has_arg ? text.substr(colon + 1) : std::string_view();
  auto no_arg = [&](PolicyKind k) {
    if (has_arg) throw Error("policy '" + std::string(name) + "' takes no parameter");
    return PolicySpec{k, 0.0};
  };
  auto with_arg = [&](PolicyKind k, double fallback) {
    if (!has_arg) return PolicySpec{k, fallback};
    const std::optional<double> v = parse_param(arg);
    if (!v || *v <= 0) throw Error("bad policy parameter in '" + std::string(text) + "'");
    return PolicySpec{k, *v};
  };
  if (name == "oracle") return no_arg(PolicyKind::kOracle);
  if (name == "noisy") return with_arg(PolicyKind::kNoisyOracle, kDefaultNoiseSigma);
  if (name == "lazy") return no_arg(PolicyKind::kLazyStop);
  if (name == "repeat") return no_arg(PolicyKind::kRepeater);
  if (name == "drift") return with_arg(PolicyKind::kDrifter, kDefaultDriftStep);
  if (name == "random") return no_arg(PolicyKind::kRandomWalk);
  throw Error("unknown policy '" + std::string(text) + "'");
}

std::string to_string(const PolicySpec& spec) {
  switch (spec.kind) {
    case PolicyKind::kOracle:
      return "oracle";
    case PolicyKind::kNoisyOracle:
      return "noisy:" + format_param(spec.param);
    case PolicyKind::kLazyStop:
      return "lazy";
    case PolicyKind::kRepeater:
      return "repeat";
    case PolicyKind::kDrifter:
      return "drift:" + format_param(spec.param);
    case PolicyKind::kRandomWalk:
      return "random";
  }
  return "oracle";
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::uint64_t seed, ActionMode mode) {
  switch (spec.kind) {
    case PolicyKind::kOracle:
      return std::make_unique<Oracle>(mode);
    case PolicyKind::kNoisyOracle:
      return std::make_unique<NoisyOracle>(mode, spec.param, seed);
    case PolicyKind::kLazyStop:
      return std::make_unique<LazyStop>(mode);
    case PolicyKind::kRepeater:
      return std::make_unique<Repeater>(mode);
    case PolicyKind::kDrifter:
      return std::make_unique<Drifter>(mode, spec.param);
    case PolicyKind::kRandomWalk:
      return std::make_unique<RandomWalk>(mode, seed);
  }
  throw Error("unknown policy kind");
}

}  // namespace cursor
