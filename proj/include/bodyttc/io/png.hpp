#pragma once

#include <png.h>

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "bodyttc/error.hpp"
#include "bodyttc/mask.hpp"

namespace bodyttc {

struct GrayImage {
  Extent extent;
  std::vector<std::uint8_t> pixels;  // row-major
};

namespace detail {

inline void write_png(const std::string& path, Extent extent, std::span<const std::uint8_t> pixels,
                      png_uint_32 format) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(extent.width);
  image.height = static_cast<png_uint_32>(extent.height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, pixels.data(), 0, nullptr))
    throw IoError("cannot write PNG '" + path + "': " + image.message);
}

}  // namespace detail

inline void write_png_gray(const std::string& path, Extent extent, std::span<const std::uint8_t> pixels) {
  if (pixels.size() != static_cast<std::size_t>(extent.height) * static_cast<std::size_t>(extent.width))
    throw IoError("gray PNG buffer does not match extent");
  detail::write_png(path, extent, pixels, PNG_FORMAT_GRAY);
}

/// Interleaved 8-bit RGB.
inline void write_png_rgb(const std::string& path, Extent extent, std::span<const std::uint8_t> pixels) {
  if (pixels.size() != 3 * static_cast<std::size_t>(extent.height) * static_cast<std::size_t>(extent.width))
    throw IoError("RGB PNG buffer does not match extent");
  detail::write_png(path, extent, pixels, PNG_FORMAT_RGB);
}

/// Any PNG, converted to 8-bit grayscale.
inline GrayImage read_png_gray(const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw IoError("cannot read PNG '" + path + "': " + image.message);
  image.format = PNG_FORMAT_GRAY;
  GrayImage out{{static_cast<int>(image.height), static_cast<int>(image.width)}, {}};
  out.pixels.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, out.pixels.data(), 0, nullptr)) {
    png_image_free(&image);
    throw IoError("cannot decode PNG '" + path + "': " + image.message);
  }
  return out;
}

}  // namespace bodyttc
