#ifndef CURSOR_GEOMETRY_H_
#define CURSOR_GEOMETRY_H_

#include <utility>

namespace cursor {

// Integer pixel coordinate. Column first.
struct Point {
  int x = 0;
  int y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct ImageSize {
  int w = 1;
  int h = 1;

  long long pixel_count() const { return static_cast<long long>(w) * h; }

  friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

// Closed, axis-aligned pixel box: both corners belong to the box.
struct BBox {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  // Pixel extents (inclusive), e.g. [40,60] has width 21.
  int width() const { return x_max - x_min + 1; }
  int height() const { return y_max - y_min + 1; }
  long long area() const { return static_cast<long long>(width()) * height(); }

  friend bool operator==(const BBox&, const BBox&) = default;
};

bool is_valid(const BBox& b);
bool fits_within(const BBox& b, ImageSize s);
bool in_bounds(Point p, ImageSize s);

bool contains(const BBox& b, Point p);

// Maps the image onto the unit square, each axis by its own extent.
std::pair<double, double> normalize(Point p, ImageSize s);

// All distances below are Euclidean in normalized unit-square coordinates.
double edge_distance(Point p, const BBox& b, ImageSize s);
double center_distance(Point p, const BBox& b, ImageSize s);
// Vertex-to-centre distance. Zero for a single-pixel box.
double max_center_distance(const BBox& b, ImageSize s);

// Dense position reward: 1 + (1 - d_centre/d_max)^2 inside the box and
// 1 - d_edge outside. A hit on a zero-extent box scores 2.
double position_reward(Point p, const BBox& b, ImageSize s);

}  // namespace cursor

#endif  // CURSOR_GEOMETRY_H_
