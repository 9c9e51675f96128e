#ifndef CURSOR_TESTS_TEST_UTIL_H_
#define CURSOR_TESTS_TEST_UTIL_H_

#include <memory>

#include "cursor/env.h"
#include "cursor/scene.h"

namespace cursor::testing {

// Plain white scene with one annotated target.
inline std::shared_ptr<const Scene> white_scene(ImageSize s, BBox target, std::string tag = "") {
  auto scene = std::make_shared<Scene>();
  scene->id = "white";
  scene->image = Image(s, kWhite);
  scene->annotations.push_back({"target 0", target, std::move(tag)});
  return scene;
}

inline Response move(int x, int y) { return {"", Move{{x, y}}, true}; }
inline Response shift(int dx, int dy) { return {"", RelativeMove{dx, dy}, true}; }
inline Response stop() { return {"", Stop{}, true}; }

// Trajectory from explicit positions: every entry after p_0 is a Move.
inline Trajectory path(std::initializer_list<Point> ps, bool stop_at_end, int max_steps = 4) {
  Trajectory t;
  auto it = ps.begin();
  t.initial = *it++;
  for (; it != ps.end(); ++it) t.steps.push_back({Move{*it}, *it, true, ""});
  if (stop_at_end) {
    t.steps.push_back({Stop{}, t.final_position(), true, ""});
    t.stopped = true;
  }
  t.done = t.stopped || t.length() >= max_steps;
  return t;
}

}  // namespace cursor::testing

#endif  // CURSOR_TESTS_TEST_UTIL_H_
