#include "cursor/sprite.h"

#include <array>

#include "cursor/error.h"

namespace cursor {
namespace {

struct Vertex {
  double x, y;
};

// Arrow outline in pixel-corner coordinates, tip first.
constexpr std::array<Vertex, 7> kArrow{{
    {0.0, 0.0},
    {0.0, 27.0},
    {6.5, 21.5},
    {10.5, 30.5},
    {14.5, 29.0},
    {10.5, 20.0},
    {19.0, 20.0},
}};

bool inside_arrow(double px, double py) {
  bool in = false;
  for (std::size_t i = 0, j = kArrow.size() - 1; i < kArrow.size(); j = i++) {
    const Vertex& a = kArrow[i];
    const Vertex& b = kArrow[j];
    if ((a.y > py) != (b.y > py) && px < (b.x - a.x) * (py - a.y) / (b.y - a.y) + a.x) {
      in = !in;
    }
  }
  return in;
}

}  // namespace

int CursorSprite::opaque_count() const {
  int n = 0;
  for (int y = 0; y < size.h; ++y) {
    for (int x = 0; x < size.w; ++x) n += alpha(x, y) > 0;
  }
  return n;
}

CursorSprite CursorSprite::arrow() {
  CursorSprite s;
  s.size = {20, 31};
  s.hotspot = {0, 0};
  s.rgba.assign(static_cast<std::size_t>(s.size.pixel_count()) * 4, 0);

  auto filled = [&](int x, int y) {
    if (x == 0 && y == 0) return true;  // the tip is always drawn
    if (x < 0 || y < 0 || x >= s.size.w || y >= s.size.h) return false;
    return inside_arrow(x + 0.5, y + 0.5);
  };
  for (int y = 0; y < s.size.h; ++y) {
    for (int x = 0; x < s.size.w; ++x) {
      if (!filled(x, y)) continue;
      const bool edge = !filled(x - 1, y) || !filled(x + 1, y) || !filled(x, y - 1) ||
                        !filled(x, y + 1);
      const Rgb c = edge ? kBlack : kWhite;
      const std::size_t i = (static_cast<std::size_t>(y) * s.size.w + x) * 4;
      s.rgba[i] = c.r;
      s.rgba[i + 1] = c.g;
      s.rgba[i + 2] = c.b;
      s.rgba[i + 3] = 255;
    }
  }
  return s;
}

CursorSprite CursorSprite::solid(ImageSize size, Rgb color, std::uint8_t alpha) {
  CursorSprite s;
  s.size = size;
  s.hotspot = {0, 0};
  s.rgba.reserve(static_cast<std::size_t>(size.pixel_count()) * 4);
  for (long long i = 0; i < size.pixel_count(); ++i) {
    s.rgba.insert(s.rgba.end(), {color.r, color.g, color.b, alpha});
  }
  return s;
}

Image render_cursor(const Image& scene, const CursorSprite& sprite, Point p) {
  Image out = scene;
  const int ox = p.x - sprite.hotspot.x;
  const int oy = p.y - sprite.hotspot.y;
  for (int sy = 0; sy < sprite.size.h; ++sy) {
    const int y = oy + sy;
    if (y < 0 || y >= out.size.h) continue;
    for (int sx = 0; sx < sprite.size.w; ++sx) {
      const int x = ox + sx;
      const unsigned a = sprite.alpha(sx, sy);
      if (a == 0 || x < 0 || x >= out.size.w) continue;
      const Rgb fg = sprite.color(sx, sy);
      const Rgb bg = out.at(x, y);
      auto blend = [a](unsigned f, unsigned b) {
        return static_cast<std::uint8_t>((f * a + b * (255 - a) + 127) / 255);
      };
      out.set(x, y, {blend(fg.r, bg.r), blend(fg.g, bg.g), blend(fg.b, bg.b)});
    }
  }
  return out;
}

}  // namespace cursor
