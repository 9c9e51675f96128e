#include "cursor/synth.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "cursor/error.h"
#include "cursor/rng.h"

namespace cursor {
namespace {

// Muted UI colours; none is black or pure red.
constexpr std::array<Rgb, 8> kPalette{{
    {66, 133, 244},
    {52, 168, 83},
    {251, 188, 5},
    {154, 160, 166},
    {171, 71, 188},
    {0, 172, 193},
    {255, 112, 67},
    {92, 107, 192},
}};

Rgb darker(Rgb c) {
  return {static_cast<std::uint8_t>(c.r * 3 / 5), static_cast<std::uint8_t>(c.g * 3 / 5),
          static_cast<std::uint8_t>(c.b * 3 / 5)};
}

int sample_side(Rng& rng, int lo, int hi) {
  const int first_odd = lo | 1;
  const int last_odd = (hi % 2 == 0) ? hi - 1 : hi;
  if (first_odd > last_odd) return static_cast<int>(rng.uniform_int(lo, hi));
  return first_odd + 2 * static_cast<int>(rng.uniform_int(0, (last_odd - first_odd) / 2));
}

bool intersects(const BBox& a, const BBox& b) {
  return a.x_min <= b.x_max && b.x_min <= a.x_max && a.y_min <= b.y_max && b.y_min <= a.y_max;
}

BBox sample_box(Rng& rng, ImageSize s, int lo, int hi) {
  const int w = std::min(sample_side(rng, lo, hi), s.w);
  const int h = std::min(sample_side(rng, lo, hi), s.h);
  const int x = static_cast<int>(rng.uniform_int(0, s.w - w));
  const int y = static_cast<int>(rng.uniform_int(0, s.h - h));
  return {x, y, x + w - 1, y + h - 1};
}

void draw_widget(Image& img, const BBox& b, Rgb fill) {
  fill_box(img, b, fill);
  stroke_box(img, b, 1, darker(fill));
}

double pixel_edge_distance(Point p, const BBox& b) {
  const int dx = std::max({b.x_min - p.x, 0, p.x - b.x_max});
  const int dy = std::max({b.y_min - p.y, 0, p.y - b.y_max});
  return std::hypot(dx, dy);
}

}  // namespace

Scene gen_scene(const SceneParams& params) {
  if (params.n_targets < 1 || params.n_distractors < 0 || params.min_target < 1 ||
      params.min_target > params.max_target) {
    throw Error("invalid scene parameters");
  }
  Rng rng(params.seed);
  Scene scene;
  scene.id = params.id.empty() ? "scene-" + std::to_string(params.seed) : params.id;
  scene.seed = params.seed;
  scene.image = Image(params.size, params.background);

  std::vector<BBox> targets;
  for (int k = 0; k < params.n_targets; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < params.max_attempts && !placed; ++attempt) {
      const BBox b = sample_box(rng, params.size, params.min_target, params.max_target);
      if (std::none_of(targets.begin(), targets.end(),
                       [&](const BBox& t) { return intersects(t, b); })) {
        targets.push_back(b);
        placed = true;
      }
    }
    if (!placed) throw Error("cannot place targets");
  }

  const int distractor_max = std::max(params.max_target, params.min_target * 2);
  for (int k = 0; k < params.n_distractors; ++k) {
    for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
      const BBox b = sample_box(rng, params.size, params.min_target, distractor_max);
      if (std::none_of(targets.begin(), targets.end(),
                       [&](const BBox& t) { return intersects(t, b); })) {
        draw_widget(scene.image, b, kPalette[rng.uniform_int(0, kPalette.size() - 1)]);
        break;
      }
    }
  }

  for (std::size_t k = 0; k < targets.size(); ++k) {
    draw_widget(scene.image, targets[k], kPalette[rng.uniform_int(0, kPalette.size() - 1)]);
    Annotation a;
    a.instruction = "target " + std::to_string(k + 1);
    a.target = targets[k];
    a.tag = targets[k].area() <= 32 * 32 ? "small" : "large";
    scene.annotations.push_back(std::move(a));
  }
  return scene;
}

int probe_outside_radius(const CursorSprite& sprite) {
  return 3 * std::max(sprite.size.w, sprite.size.h);
}

std::vector<ProbeCase> gen_probe_grid(const ProbeParams& params, const CursorSprite& sprite) {
  const ImageSize canvas = params.canvas;
  if (params.rows < 1 || params.cols < 1 || params.n_outside < 0 ||
      params.box.w > canvas.w / params.cols || params.box.h > canvas.h / params.rows) {
    throw Error("probe box does not fit the grid");
  }
  const int radius = probe_outside_radius(sprite);
  Rng rng(params.seed);
  std::vector<ProbeCase> cases;
  cases.reserve(static_cast<std::size_t>(params.rows) * params.cols * (5 + params.n_outside));

  for (int r = 0; r < params.rows; ++r) {
    for (int c = 0; c < params.cols; ++c) {
      const int cx = static_cast<int>((2LL * c + 1) * canvas.w / (2LL * params.cols));
      const int cy = static_cast<int>((2LL * r + 1) * canvas.h / (2LL * params.rows));
      const int x0 = cx - params.box.w / 2;
      const int y0 = cy - params.box.h / 2;
      const BBox box{x0, y0, x0 + params.box.w - 1, y0 + params.box.h - 1};
      const int inset = std::min({kProbeCornerInset, (params.box.w - 1) / 2, (params.box.h - 1) / 2});

      auto add = [&](Point p) {
        ProbeCase pc;
        pc.id = "probe-r" + std::to_string(r) + "c" + std::to_string(c) + "-" +
                std::to_string(cases.size());
        pc.box = box;
        pc.cursor = p;
        pc.inside = contains(box, p);
        pc.row = r;
        pc.col = c;
        cases.push_back(std::move(pc));
      };
      add({box.x_min + inset, box.y_min + inset});
      add({box.x_max - inset, box.y_min + inset});
      add({box.x_min + inset, box.y_max - inset});
      add({box.x_max - inset, box.y_max - inset});
      add({(box.x_min + box.x_max) / 2, (box.y_min + box.y_max) / 2});

      // Uniform over the ring of pixels within the radius, by rejection.
      const int lx = std::max(0, box.x_min - radius + 1);
      const int hx = std::min(canvas.w - 1, box.x_max + radius - 1);
      const int ly = std::max(0, box.y_min - radius + 1);
      const int hy = std::min(canvas.h - 1, box.y_max + radius - 1);
      for (int k = 0; k < params.n_outside; ++k) {
        bool found = false;
        for (int attempt = 0; attempt < 100000 && !found; ++attempt) {
          const Point p{static_cast<int>(rng.uniform_int(lx, hx)),
                        static_cast<int>(rng.uniform_int(ly, hy))};
          if (contains(box, p) || pixel_edge_distance(p, box) >= radius) continue;
          add(p);
          found = true;
        }
        if (!found) throw Error("no room for outside probe positions");
      }
    }
  }
  return cases;
}

Image render_probe(const ProbeCase& c, ImageSize canvas, const CursorSprite& sprite,
                   const ProbeRenderOptions& options) {
  Image img(canvas, kWhite);
  if (options.draw_box) stroke_box(img, c.box, kProbeStroke, kRed);
  if (options.draw_cursor) img = render_cursor(img, sprite, c.cursor);
  return img;
}

Heatmap probe_f1_heatmap(std::span<const ProbeCase> cases, const std::vector<bool>& answers,
                         int rows, int cols) {
  if (cases.size() != answers.size()) throw Error("length mismatch");
  if (rows < 1 || cols < 1) throw Error("empty heatmap grid");
  struct Counts {
    long tp = 0, fp = 0, fn = 0;
  };
  std::vector<Counts> counts(static_cast<std::size_t>(rows) * cols);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const ProbeCase& pc = cases[i];
    if (pc.row < 0 || pc.row >= rows || pc.col < 0 || pc.col >= cols) {
      throw Error("probe case outside heatmap grid");
    }
    Counts& k = counts[static_cast<std::size_t>(pc.row) * cols + pc.col];
    if (answers[i] && pc.inside) ++k.tp;
    if (answers[i] && !pc.inside) ++k.fp;
    if (!answers[i] && pc.inside) ++k.fn;
  }
  Heatmap h{rows, cols, {}};
  h.values.reserve(counts.size());
  for (const Counts& k : counts) {
    const long denom = 2 * k.tp + k.fp + k.fn;
    h.values.push_back(denom == 0 ? 1.0 : 2.0 * k.tp / static_cast<double>(denom));
  }
  return h;
}

std::string heatmap_csv(const Heatmap& h) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  for (int r = 0; r < h.rows; ++r) {
    for (int c = 0; c < h.cols; ++c) out << (c ? "," : "") << h.at(r, c);
    out << '\n';
  }
  return out.str();
}

void write_heatmap_png(const std::string& path, const Heatmap& h, int cell_px) {
  const ImageSize size{h.cols * cell_px, h.rows * cell_px};
  std::vector<std::uint8_t> gray(static_cast<std::size_t>(size.pixel_count()));
  for (int y = 0; y < size.h; ++y) {
    for (int x = 0; x < size.w; ++x) {
      const double v = std::clamp(h.at(y / cell_px, x / cell_px), 0.0, 1.0);
      gray[static_cast<std::size_t>(y) * size.w + x] =
          static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
  }
  write_gray_png(path, size, gray);
}

}  // namespace cursor
