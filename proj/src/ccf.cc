#include "cursor/ccf.h"

#include <algorithm>
#include <cmath>

#include "cursor/error.h"
#include "cursor/image.h"

namespace cursor {
namespace {

int round_clamped(double v, int hi) {
  return static_cast<int>(std::clamp<long>(std::lround(v), 0L, static_cast<long>(hi)));
}

Trajectory translated(const Trajectory& t, Point origin) {
  Trajectory out = t;
  out.initial = {t.initial.x + origin.x, t.initial.y + origin.y};
  for (TrajectoryStep& s : out.steps) {
    s.position = {s.position.x + origin.x, s.position.y + origin.y};
  }
  return out;
}

void run_to_end(const Environment& env, Environment::Reset& episode, Policy& policy) {
  Observation obs = std::move(episode.observation);
  while (!episode.state.done()) {
    obs = env.step(episode.state, policy.act(obs, episode.state.target)).observation;
  }
}

}  // namespace

Downscale training_downscale(ImageSize s, const PixelBudget& budget) {
  if (s.pixel_count() <= budget.pixels()) return {s, 1.0};
  const double scale =
      std::sqrt(static_cast<double>(budget.pixels()) / static_cast<double>(s.pixel_count()));
  ImageSize out{std::max(1, static_cast<int>(std::floor(s.w * scale))),
                std::max(1, static_cast<int>(std::floor(s.h * scale)))};
  // Guard against the square root rounding up past the budget.
  while (out.pixel_count() > budget.pixels()) {
    if (static_cast<double>(out.w) / s.w >= static_cast<double>(out.h) / s.h && out.w > 1) {
      --out.w;
    } else {
      --out.h;
    }
  }
  return {out, scale};
}

Point map_from_downscaled(Point q, double scale, ImageSize full) {
  return {round_clamped(q.x / scale, full.w - 1), round_clamped(q.y / scale, full.h - 1)};
}

Point map_to_downscaled(Point p, double scale, ImageSize down) {
  return {round_clamped(p.x * scale, down.w - 1), round_clamped(p.y * scale, down.h - 1)};
}

BBox map_box_to_downscaled(const BBox& b, double scale, ImageSize down) {
  // Pixel x covers [x, x + 1); keep every downscaled pixel the box touches.
  auto lo = [&](int v, int hi) {
    return std::clamp(static_cast<int>(std::floor(v * scale)), 0, hi);
  };
  auto hi = [&](int v, int hi) {
    return std::clamp(static_cast<int>(std::ceil((v + 1) * scale)) - 1, 0, hi);
  };
  return {lo(b.x_min, down.w - 1), lo(b.y_min, down.h - 1), hi(b.x_max, down.w - 1),
          hi(b.y_max, down.h - 1)};
}

CropWindow crop_window(ImageSize full, Point pred, const PixelBudget& budget) {
  if (full.pixel_count() <= budget.pixels()) return {{0, 0}, full, 1.0};
  const ImageSize size = training_downscale(full, budget).size;
  const Point origin{std::clamp(pred.x - size.w / 2, 0, full.w - size.w),
                     std::clamp(pred.y - size.h / 2, 0, full.h - size.h)};
  return {origin, size, 1.0};
}

Point to_full(Point q, const CropWindow& w) { return {q.x + w.origin.x, q.y + w.origin.y}; }

Point to_crop(Point p, const CropWindow& w) {
  const Point q{p.x - w.origin.x, p.y - w.origin.y};
  if (!in_bounds(q, w.size)) throw Error("prediction outside focus");
  return q;
}

bool overlaps(const BBox& b, const CropWindow& w) {
  return b.x_max >= w.origin.x && b.x_min < w.origin.x + w.size.w && b.y_max >= w.origin.y &&
         b.y_min < w.origin.y + w.size.h;
}

CcfOutcome ccf_ground(const Environment& env, std::shared_ptr<const Scene> scene,
                      std::size_t target_index, Policy& policy, const PixelBudget& budget,
                      const EpisodeConfig& config) {
  if (!scene || target_index >= scene->annotations.size()) throw Error("unknown target");
  const ImageSize full = scene->size();
  const BBox target = scene->annotations[target_index].target;
  CcfOutcome out;

  if (full.pixel_count() <= budget.pixels()) {
    Environment::Reset episode = env.reset(scene, target_index, config);
    run_to_end(env, episode, policy);
    const Trajectory& t = episode.state.trajectory;
    out.focused = false;
    out.coarse = t.length() > 0 ? t.position(1) : t.initial;
    out.coarse_format_ok = t.length() > 0 ? t.steps.front().format_ok : true;
    out.window = {{0, 0}, full, 1.0};
    out.target_in_focus = true;
    out.trajectory = t;
    out.prediction = t.final_position();
    return out;
  }

  // Coarse step on the downscaled screen.
  const Downscale ds = training_downscale(full, budget);
  auto down = std::make_shared<Scene>();
  down->id = scene->id + "@coarse";
  down->image = resize_bilinear(scene->image, ds.size);
  down->seed = scene->seed;
  EpisodeConfig coarse_config = config;
  coarse_config.max_steps = 1;
  coarse_config.initial_cursor.reset();
  Environment::Reset coarse =
      env.start(down, map_box_to_downscaled(target, ds.scale, ds.size), coarse_config);
  env.step(coarse.state, policy.act(coarse.observation, coarse.state.target));
  out.focused = true;
  out.coarse = map_from_downscaled(coarse.state.cursor, ds.scale, full);
  out.coarse_format_ok = coarse.state.trajectory.steps.front().format_ok;

  // Fine search inside the crop; the full image is no longer observed.
  out.window = crop_window(full, out.coarse, budget);
  out.target_in_focus = overlaps(target, out.window);
  auto focus = std::make_shared<Scene>();
  focus->id = scene->id + "@focus";
  focus->image = crop(scene->image, out.window.origin, out.window.size);
  focus->seed = scene->seed;
  const Point o = out.window.origin;
  const BBox focus_target{target.x_min - o.x, target.y_min - o.y, target.x_max - o.x,
                          target.y_max - o.y};
  EpisodeConfig focus_config = config;
  focus_config.initial_cursor = to_crop(out.coarse, out.window);
  Environment::Reset episode = env.start(focus, focus_target, focus_config);
  run_to_end(env, episode, policy);

  out.trajectory = translated(episode.state.trajectory, o);
  out.prediction = out.trajectory.final_position();
  return out;
}

}  // namespace cursor
