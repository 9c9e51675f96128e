#include "cursor/image.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "cursor/error.h"

namespace cursor {
namespace {

void write_image(const std::filesystem::path& path, ImageSize size,
                 png_uint_32 format, std::span<const std::uint8_t> bytes) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(size.w);
  image.height = static_cast<png_uint_32>(size.h);
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, bytes.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw IoError("cannot write " + path.string() + ": " + msg);
  }
}

}  // namespace

Image::Image(ImageSize s, Rgb fill) : size(s) {
  rgb.resize(static_cast<std::size_t>(s.pixel_count()) * 3);
  for (std::size_t i = 0; i < rgb.size(); i += 3) {
    rgb[i] = fill.r;
    rgb[i + 1] = fill.g;
    rgb[i + 2] = fill.b;
  }
}

void fill_box(Image& img, const BBox& b, Rgb c) {
  const int x0 = std::max(b.x_min, 0), x1 = std::min(b.x_max, img.size.w - 1);
  const int y0 = std::max(b.y_min, 0), y1 = std::min(b.y_max, img.size.h - 1);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) img.set(x, y, c);
  }
}

void stroke_box(Image& img, const BBox& b, int stroke, Rgb c) {
  const int t = stroke - 1;
  fill_box(img, {b.x_min, b.y_min, b.x_max, std::min(b.y_min + t, b.y_max)}, c);
  fill_box(img, {b.x_min, std::max(b.y_max - t, b.y_min), b.x_max, b.y_max}, c);
  fill_box(img, {b.x_min, b.y_min, std::min(b.x_min + t, b.x_max), b.y_max}, c);
  fill_box(img, {std::max(b.x_max - t, b.x_min), b.y_min, b.x_max, b.y_max}, c);
}

Image crop(const Image& img, Point origin, ImageSize size) {
  if (origin.x < 0 || origin.y < 0 || origin.x + size.w > img.size.w ||
      origin.y + size.h > img.size.h) {
    throw Error("crop window outside image");
  }
  Image out;
  out.size = size;
  out.rgb.resize(static_cast<std::size_t>(size.pixel_count()) * 3);
  const std::size_t row_bytes = static_cast<std::size_t>(size.w) * 3;
  for (int y = 0; y < size.h; ++y) {
    const auto src = img.rgb.begin() + img.offset(origin.x, origin.y + y);
    std::copy(src, src + row_bytes, out.rgb.begin() + out.offset(0, y));
  }
  return out;
}

Image resize_bilinear(const Image& img, ImageSize size) {
  if (size == img.size) return img;
  Image out;
  out.size = size;
  out.rgb.resize(static_cast<std::size_t>(size.pixel_count()) * 3);
  const double sx = static_cast<double>(img.size.w) / size.w;
  const double sy = static_cast<double>(img.size.h) / size.h;

  // Pixel-centre aligned sampling, edges clamped.
  struct Tap {
    int i0, i1;
    double frac;
  };
  auto taps = [](int n_out, int n_in, double scale) {
    std::vector<Tap> t(n_out);
    for (int i = 0; i < n_out; ++i) {
      const double src = std::clamp((i + 0.5) * scale - 0.5, 0.0, n_in - 1.0);
      const int i0 = static_cast<int>(src);
      t[i] = {i0, std::min(i0 + 1, n_in - 1), src - i0};
    }
    return t;
  };
  const std::vector<Tap> tx = taps(size.w, img.size.w, sx);
  const std::vector<Tap> ty = taps(size.h, img.size.h, sy);

  for (int y = 0; y < size.h; ++y) {
    const Tap& vy = ty[y];
    for (int x = 0; x < size.w; ++x) {
      const Tap& vx = tx[x];
      for (int c = 0; c < 3; ++c) {
        const double a = img.rgb[img.offset(vx.i0, vy.i0) + c];
        const double b = img.rgb[img.offset(vx.i1, vy.i0) + c];
        const double d = img.rgb[img.offset(vx.i0, vy.i1) + c];
        const double e = img.rgb[img.offset(vx.i1, vy.i1) + c];
        const double top = a + (b - a) * vx.frac;
        const double bottom = d + (e - d) * vx.frac;
        const double v = top + (bottom - top) * vy.frac;
        out.rgb[out.offset(x, y) + c] =
            static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return out;
}

std::uint64_t fingerprint(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

Image read_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw IoError("cannot read " + path.string() + ": " + msg);
  }
  image.format = PNG_FORMAT_RGB;
  Image img;
  img.size = {static_cast<int>(image.width), static_cast<int>(image.height)};
  img.rgb.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, img.rgb.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw IoError("cannot decode " + path.string() + ": " + msg);
  }
  return img;
}

void write_png(const std::filesystem::path& path, const Image& img) {
  write_image(path, img.size, PNG_FORMAT_RGB, img.rgb);
}

void write_gray_png(const std::filesystem::path& path, ImageSize size,
                    std::span<const std::uint8_t> gray) {
  if (gray.size() != static_cast<std::size_t>(size.pixel_count())) {
    throw Error("gray buffer does not match image size");
  }
  write_image(path, size, PNG_FORMAT_GRAY, gray);
}

}  // namespace cursor
