#include "cursor/geometry.h"

#include <algorithm>
#include <cmath>

namespace cursor {
namespace {

// Normalized offsets are at most a few units, so the overflow-safe (and much
// slower) std::hypot buys nothing here.
double norm(double x, double y) { return std::sqrt(x * x + y * y); }

}  // namespace

bool is_valid(const BBox& b) { return b.x_min <= b.x_max && b.y_min <= b.y_max; }

bool fits_within(const BBox& b, ImageSize s) {
  return is_valid(b) && b.x_min >= 0 && b.y_min >= 0 && b.x_max < s.w &&
         b.y_max < s.h;
}

bool in_bounds(Point p, ImageSize s) {
  return p.x >= 0 && p.y >= 0 && p.x < s.w && p.y < s.h;
}

bool contains(const BBox& b, Point p) {
  return b.x_min <= p.x && p.x <= b.x_max && b.y_min <= p.y && p.y <= b.y_max;
}

std::pair<double, double> normalize(Point p, ImageSize s) {
  return {static_cast<double>(p.x) / s.w, static_cast<double>(p.y) / s.h};
}

double edge_distance(Point p, const BBox& b, ImageSize s) {
  const int dx = std::max({b.x_min - p.x, 0, p.x - b.x_max});
  const int dy = std::max({b.y_min - p.y, 0, p.y - b.y_max});
  return norm(static_cast<double>(dx) / s.w, static_cast<double>(dy) / s.h);
}

double center_distance(Point p, const BBox& b, ImageSize s) {
  const double cx = (static_cast<double>(b.x_min) + b.x_max) / 2.0;
  const double cy = (static_cast<double>(b.y_min) + b.y_max) / 2.0;
  return norm((p.x - cx) / s.w, (p.y - cy) / s.h);
}

double max_center_distance(const BBox& b, ImageSize s) {
  const double half_w = (static_cast<double>(b.x_max) - b.x_min) / 2.0;
  const double half_h = (static_cast<double>(b.y_max) - b.y_min) / 2.0;
  return norm(half_w / s.w, half_h / s.h);
}

double position_reward(Point p, const BBox& b, ImageSize s) {
  if (!contains(b, p)) return 1.0 - edge_distance(p, b, s);
  const double d_max = max_center_distance(b, s);
  if (d_max == 0.0) return 2.0;
  const double closeness = 1.0 - center_distance(p, b, s) / d_max;
  return 1.0 + closeness * closeness;
}

}  // namespace cursor
