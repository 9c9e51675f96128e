#ifndef CURSOR_CCF_H_
#define CURSOR_CCF_H_

#include <memory>

#include "cursor/agents.h"
#include "cursor/env.h"
#include "cursor/geometry.h"

namespace cursor {

// Area budget for one observation, e.g. the training resolution 1920x1080.
struct PixelBudget {
  int w = 1920;
  int h = 1080;

  long long pixels() const { return static_cast<long long>(w) * h; }
};

// A window of the full image. `scale` is 1 for crops.
struct CropWindow {
  Point origin;
  ImageSize size;
  double scale = 1.0;

  friend bool operator==(const CropWindow&, const CropWindow&) = default;
};

struct Downscale {
  ImageSize size;
  double scale = 1.0;
};

// Largest aspect-preserving size within the budget area; never upscales.
Downscale training_downscale(ImageSize s, const PixelBudget& budget);

// Downscaled point back to full-image pixels, clamped to `full`.
Point map_from_downscaled(Point q, double scale, ImageSize full);
Point map_to_downscaled(Point p, double scale, ImageSize down);
BBox map_box_to_downscaled(const BBox& b, double scale, ImageSize down);

// Budget-sized window with the full image's aspect ratio, centred on `pred`
// and shifted (never resized) to stay inside the image. The whole image when
// it already fits the budget.
CropWindow crop_window(ImageSize full, Point pred, const PixelBudget& budget);

Point to_full(Point q, const CropWindow& w);
// Throws Error("prediction outside focus") when `p` is not in the window.
Point to_crop(Point p, const CropWindow& w);

bool overlaps(const BBox& b, const CropWindow& w);

struct CcfOutcome {
  // Final grounding prediction, full-image pixels.
  Point prediction;
  // False when the image already fit the budget and a single plain episode
  // was run instead.
  bool focused = false;
  Point coarse;
  bool coarse_format_ok = true;
  CropWindow window;
  // Whether any pixel of the target lies in the window.
  bool target_in_focus = true;
  // Episode steps in full-image coordinates. For a focused run this is the
  // crop episode, starting at the coarse prediction.
  Trajectory trajectory;
};

// One coarse step on the downscaled image, then a fresh episode on the
// budget-sized crop around the coarse prediction. The crop episode does not
// see the full image and gets its own `config.max_steps` budget.
CcfOutcome ccf_ground(const Environment& env, std::shared_ptr<const Scene> scene,
                      std::size_t target_index, Policy& policy,
                      const PixelBudget& budget, const EpisodeConfig& config);

}  // namespace cursor

#endif  // CURSOR_CCF_H_
