#ifndef CURSOR_SCENE_H_
#define CURSOR_SCENE_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "cursor/geometry.h"
#include "cursor/image.h"

namespace cursor {

struct Annotation {
  std::string instruction;
  BBox target;
  // Optional grouping key for metric breakdowns (e.g. "small", "icon").
  std::string tag;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

// A screen image and its instruction -> target annotations. Immutable once
// built; episodes share it through `std::shared_ptr<const Scene>`.
struct Scene {
  std::string id;
  Image image;
  std::vector<Annotation> annotations;
  std::uint64_t seed = 0;

  ImageSize size() const { return image.size; }

  friend bool operator==(const Scene&, const Scene&) = default;
};

// Throws Error if the pixel buffer or any annotation is inconsistent.
void validate(const Scene& scene);

// Scenes are stored as `<id>.png` plus a `<id>.json` sidecar manifest
// {id, file, size: [w, h], annotations: [{instruction, target, tag}], seed}.
void save_scene(const std::filesystem::path& dir, const Scene& scene);
Scene load_scene(const std::filesystem::path& manifest);
// Loads every `*.json` sidecar in `dir`, sorted by file name.
std::vector<std::shared_ptr<const Scene>> load_scene_dir(const std::filesystem::path& dir);

// The sidecar manifest as one line of JSON, without the pixels.
std::string scene_manifest_line(const Scene& scene);

}  // namespace cursor

#endif  // CURSOR_SCENE_H_
