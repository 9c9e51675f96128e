#ifndef CURSOR_IMAGE_H_
#define CURSOR_IMAGE_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cursor/geometry.h"

namespace cursor {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kBlack{0, 0, 0};
inline constexpr Rgb kRed{255, 0, 0};

// Row-major, 3 bytes per pixel.
struct Image {
  ImageSize size;
  std::vector<std::uint8_t> rgb;

  Image() = default;
  Image(ImageSize s, Rgb fill);

  Rgb at(int x, int y) const {
    const auto i = offset(x, y);
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
  }
  void set(int x, int y, Rgb c) {
    const auto i = offset(x, y);
    rgb[i] = c.r;
    rgb[i + 1] = c.g;
    rgb[i + 2] = c.b;
  }
  std::size_t offset(int x, int y) const {
    return (static_cast<std::size_t>(y) * size.w + x) * 3;
  }

  friend bool operator==(const Image&, const Image&) = default;
};

// Fills the intersection of `b` with the image.
void fill_box(Image& img, const BBox& b, Rgb c);
// Draws the box border `stroke` pixels wide, inside the box.
void stroke_box(Image& img, const BBox& b, int stroke, Rgb c);

Image crop(const Image& img, Point origin, ImageSize size);
Image resize_bilinear(const Image& img, ImageSize size);

// 64-bit FNV-1a over the pixel bytes; used to check buffers for mutation.
std::uint64_t fingerprint(std::span<const std::uint8_t> bytes);

Image read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Image& img);
void write_gray_png(const std::filesystem::path& path, ImageSize size,
                    std::span<const std::uint8_t> gray);

}  // namespace cursor

#endif  // CURSOR_IMAGE_H_
