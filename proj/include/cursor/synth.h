#ifndef CURSOR_SYNTH_H_
#define CURSOR_SYNTH_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cursor/geometry.h"
#include "cursor/image.h"
#include "cursor/scene.h"
#include "cursor/sprite.h"

namespace cursor {

struct SceneParams {
  ImageSize size{1280, 720};
  int n_targets = 1;
  int n_distractors = 4;
  // Target side lengths in pixels (inclusive extents). Odd lengths are
  // preferred so that every target centre falls on a pixel.
  int min_target = 8;
  int max_target = 64;
  Rgb background{236, 236, 240};
  std::uint64_t seed = 0;
  // Defaults to "scene-<seed>".
  std::string id;
  int max_attempts = 1000;
};

// Flat GUI-like scene: bordered solid rectangles on a plain background.
// Annotated targets never overlap each other or a distractor. Throws
// Error("cannot place targets") when packing fails.
Scene gen_scene(const SceneParams& params);

struct ProbeCase {
  std::string id;
  BBox box;
  // Cursor hotspot position.
  Point cursor;
  bool inside = false;
  int row = 0;
  int col = 0;

  friend bool operator==(const ProbeCase&, const ProbeCase&) = default;
};

struct ProbeParams {
  ImageSize canvas{1000, 1000};
  ImageSize box{120, 120};
  int rows = 5;
  int cols = 5;
  int n_outside = 5;
  std::uint64_t seed = 0;
};

inline constexpr int kProbeStroke = 2;
inline constexpr int kProbeCornerInset = 2;

// Outside positions are at pixel edge distance below this from the box.
int probe_outside_radius(const CursorSprite& sprite);

// Per grid cell: the box centred on the cell, five inside cursors (four near
// the corners, one at the centre) and `n_outside` cursors near the box.
std::vector<ProbeCase> gen_probe_grid(const ProbeParams& params, const CursorSprite& sprite);

struct ProbeRenderOptions {
  bool draw_box = true;
  bool draw_cursor = true;
};

// White canvas, red box outline, black cursor.
Image render_probe(const ProbeCase& c, ImageSize canvas, const CursorSprite& sprite,
                   const ProbeRenderOptions& options = {});

struct Heatmap {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // row-major

  double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
};

// F1 of the "inside" class per cell, 2TP / (2TP + FP + FN), with 0/0 := 1.
// `answers[i]` is the yes/no answer for `cases[i]`.
Heatmap probe_f1_heatmap(std::span<const ProbeCase> cases, const std::vector<bool>& answers,
                         int rows, int cols);

std::string heatmap_csv(const Heatmap& h);
// Each cell drawn as a `cell_px` square, F1 mapped linearly to 0..255.
void write_heatmap_png(const std::string& path, const Heatmap& h, int cell_px = 40);

}  // namespace cursor

#endif  // CURSOR_SYNTH_H_
