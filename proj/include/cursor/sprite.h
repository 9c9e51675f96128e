#ifndef CURSOR_SPRITE_H_
#define CURSOR_SPRITE_H_

#include <cstdint>
#include <vector>

#include "cursor/geometry.h"
#include "cursor/image.h"

namespace cursor {

// RGBA cursor image. The hotspot is the sprite pixel that lands on the
// logical cursor position.
struct CursorSprite {
  ImageSize size;
  Point hotspot;
  std::vector<std::uint8_t> rgba;

  std::uint8_t alpha(int x, int y) const {
    return rgba[(static_cast<std::size_t>(y) * size.w + x) * 4 + 3];
  }
  Rgb color(int x, int y) const {
    const std::size_t i = (static_cast<std::size_t>(y) * size.w + x) * 4;
    return {rgba[i], rgba[i + 1], rgba[i + 2]};
  }
  int opaque_count() const;

  // 20x31 black-outlined arrow with white fill, hotspot at the tip (0, 0).
  static CursorSprite arrow();
  // Fully opaque or fully transparent rectangles of one colour; test fixtures.
  static CursorSprite solid(ImageSize size, Rgb color, std::uint8_t alpha);
};

// Returns a copy of `scene` with the sprite alpha-composited so that its
// hotspot covers `p`. Sprite pixels past the image border are dropped.
Image render_cursor(const Image& scene, const CursorSprite& sprite, Point p);

}  // namespace cursor

#endif  // CURSOR_SPRITE_H_
