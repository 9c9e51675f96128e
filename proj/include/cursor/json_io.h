#ifndef CURSOR_JSON_IO_H_
#define CURSOR_JSON_IO_H_

#include <nlohmann/json.hpp>

#include "cursor/geometry.h"

namespace cursor {

// Compact array encodings shared by manifests and trajectory logs:
// Point -> [x, y], ImageSize -> [w, h], BBox -> [x_min, y_min, x_max, y_max].
nlohmann::ordered_json to_json(Point p);
nlohmann::ordered_json to_json(ImageSize s);
nlohmann::ordered_json to_json(const BBox& b);

// These throw nlohmann::json exceptions on shape or type errors.
Point point_from_json(const nlohmann::ordered_json& j);
ImageSize image_size_from_json(const nlohmann::ordered_json& j);
BBox bbox_from_json(const nlohmann::ordered_json& j);

}  // namespace cursor

#endif  // CURSOR_JSON_IO_H_
