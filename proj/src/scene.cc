#include "cursor/scene.h"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cursor/error.h"
#include "cursor/json_io.h"

namespace cursor {

using nlohmann::ordered_json;

void validate(const Scene& scene) {
  const ImageSize s = scene.size();
  if (s.w < 1 || s.h < 1) throw Error("scene " + scene.id + ": empty image");
  if (scene.image.rgb.size() != static_cast<std::size_t>(s.pixel_count()) * 3) {
    throw Error("scene " + scene.id + ": pixel buffer does not match size");
  }
  for (const Annotation& a : scene.annotations) {
    if (!fits_within(a.target, s)) {
      throw Error("scene " + scene.id + ": target outside image for '" +
                  a.instruction + "'");
    }
  }
}

namespace {

ordered_json manifest_json(const Scene& scene) {
  ordered_json j;
  j["id"] = scene.id;
  j["file"] = scene.id + ".png";
  j["size"] = to_json(scene.size());
  ordered_json anns = ordered_json::array();
  for (const Annotation& a : scene.annotations) {
    ordered_json aj;
    aj["instruction"] = a.instruction;
    aj["target"] = to_json(a.target);
    aj["tag"] = a.tag;
    anns.push_back(std::move(aj));
  }
  j["annotations"] = std::move(anns);
  j["seed"] = scene.seed;
  return j;
}

}  // namespace

std::string scene_manifest_line(const Scene& scene) { return manifest_json(scene).dump(); }

void save_scene(const std::filesystem::path& dir, const Scene& scene) {
  std::filesystem::create_directories(dir);
  write_png(dir / (scene.id + ".png"), scene.image);
  std::ofstream out(dir / (scene.id + ".json"));
  if (!out) throw IoError("cannot write manifest for " + scene.id);
  out << scene_manifest_line(scene) << '\n';
}

Scene load_scene(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open " + manifest.string());
  Scene scene;
  try {
    const ordered_json j = ordered_json::parse(in);
    scene.id = j.at("id").get<std::string>();
    const ImageSize declared = image_size_from_json(j.at("size"));
    scene.image = read_png(manifest.parent_path() / j.at("file").get<std::string>());
    if (scene.image.size != declared) {
      throw IoError("scene " + scene.id + ": PNG size differs from manifest");
    }
    for (const auto& aj : j.at("annotations")) {
      Annotation a;
      a.instruction = aj.at("instruction").get<std::string>();
      a.target = bbox_from_json(aj.at("target"));
      a.tag = aj.value("tag", std::string());
      scene.annotations.push_back(std::move(a));
    }
    scene.seed = j.value("seed", std::uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw IoError(manifest.string() + ": " + e.what());
  }
  validate(scene);
  return scene;
}

std::vector<std::shared_ptr<const Scene>> load_scene_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> manifests;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      manifests.push_back(entry.path());
    }
  }
  std::sort(manifests.begin(), manifests.end());
  std::vector<std::shared_ptr<const Scene>> scenes;
  scenes.reserve(manifests.size());
  for (const auto& m : manifests) {
    scenes.push_back(std::make_shared<const Scene>(load_scene(m)));
  }
  return scenes;
}

}  // namespace cursor
