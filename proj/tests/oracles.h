// Independent reference computations for the tests. Nothing here calls into
// the code under test beyond plain data types.
#ifndef CURSOR_TESTS_ORACLES_H_
#define CURSOR_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "cursor/geometry.h"
#include "cursor/image.h"

namespace cursor::oracle {

inline double norm_dist(double ax, double ay, double bx, double by, ImageSize s) {
  const double dx = (ax - bx) / s.w;
  const double dy = (ay - by) / s.h;
  return std::sqrt(dx * dx + dy * dy);
}

inline bool inside(const BBox& b, Point p) {
  return p.x >= b.x_min && p.x <= b.x_max && p.y >= b.y_min && p.y <= b.y_max;
}

// Minimum over every integer point on the box boundary; 0 inside.
inline double brute_edge_distance(Point p, const BBox& b, ImageSize s) {
  if (inside(b, p)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int x = b.x_min; x <= b.x_max; ++x) {
    best = std::min({best, norm_dist(p.x, p.y, x, b.y_min, s), norm_dist(p.x, p.y, x, b.y_max, s)});
  }
  for (int y = b.y_min; y <= b.y_max; ++y) {
    best = std::min({best, norm_dist(p.x, p.y, b.x_min, y, s), norm_dist(p.x, p.y, b.x_max, y, s)});
  }
  return best;
}

inline double brute_position_reward(Point p, const BBox& b, ImageSize s) {
  if (!inside(b, p)) return 1.0 - brute_edge_distance(p, b, s);
  const double cx = 0.5 * (b.x_min + b.x_max);
  const double cy = 0.5 * (b.y_min + b.y_max);
  const double d_max = norm_dist(b.x_min, b.y_min, cx, cy, s);
  if (d_max == 0.0) return 2.0;
  const double t = 1.0 - norm_dist(p.x, p.y, cx, cy, s) / d_max;
  return 1.0 + t * t;
}

// Reads a rendered probe: the red outline gives the box, the top-most then
// left-most dark pixel gives the cursor hotspot.
struct ProbeReading {
  BBox box;
  Point hotspot;
};

inline std::optional<ProbeReading> read_probe(const Image& img) {
  bool any_red = false, any_dark = false;
  BBox box{img.size.w, img.size.h, -1, -1};
  Point hot{0, 0};
  for (int y = 0; y < img.size.h; ++y) {
    for (int x = 0; x < img.size.w; ++x) {
      const Rgb c = img.at(x, y);
      if (c.r > 200 && c.g < 60 && c.b < 60) {
        any_red = true;
        box.x_min = std::min(box.x_min, x);
        box.y_min = std::min(box.y_min, y);
        box.x_max = std::max(box.x_max, x);
        box.y_max = std::max(box.y_max, y);
      } else if (!any_dark && c.r < 60 && c.g < 60 && c.b < 60) {
        any_dark = true;
        hot = {x, y};
      }
    }
  }
  if (!any_red || !any_dark) return std::nullopt;
  return ProbeReading{box, hot};
}

}  // namespace cursor::oracle

#endif  // CURSOR_TESTS_ORACLES_H_
