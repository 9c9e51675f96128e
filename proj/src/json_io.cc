#include "cursor/json_io.h"

namespace cursor {

using nlohmann::ordered_json;

namespace {

const ordered_json& checked_array(const ordered_json& j, std::size_t n) {
  bool ok = j.is_array() && j.size() == n;
  if (ok) {
    for (const auto& e : j) ok = ok && e.is_number_integer();
  }
  if (!ok) {
    throw ordered_json::type_error::create(
        302, "expected an array of " + std::to_string(n) + " integers", &j);
  }
  return j;
}

}  // namespace

ordered_json to_json(Point p) { return ordered_json::array({p.x, p.y}); }
ordered_json to_json(ImageSize s) { return ordered_json::array({s.w, s.h}); }
ordered_json to_json(const BBox& b) {
  return ordered_json::array({b.x_min, b.y_min, b.x_max, b.y_max});
}

Point point_from_json(const ordered_json& j) {
  const auto& a = checked_array(j, 2);
  return {a[0].get<int>(), a[1].get<int>()};
}

ImageSize image_size_from_json(const ordered_json& j) {
  const auto& a = checked_array(j, 2);
  ImageSize s{a[0].get<int>(), a[1].get<int>()};
  if (s.w < 1 || s.h < 1) {
    throw ordered_json::other_error::create(501, "image size must be positive", &j);
  }
  return s;
}

BBox bbox_from_json(const ordered_json& j) {
  const auto& a = checked_array(j, 4);
  BBox b{a[0].get<int>(), a[1].get<int>(), a[2].get<int>(), a[3].get<int>()};
  if (!is_valid(b)) {
    throw ordered_json::other_error::create(501, "box corners out of order", &j);
  }
  return b;
}

}  // namespace cursor
