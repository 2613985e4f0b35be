#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdc/point_set.hpp"

namespace sdc::cli {

/// Decoded raster, row-major, `channels` samples per pixel (1 gray, 3 RGB).
struct Raster {
  int width = 0;
  int height = 0;
  int channels = 1;
  int maxval = 255;
  std::vector<std::uint16_t> samples;

  std::uint16_t sample(int x, int y, int c) const {
    return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
};

enum class ImageMode { Rgb, Gray };

ImageMode parse_image_mode(const std::string& s);

/// PNG (via libpng) or binary/ASCII PGM/PPM, picked by the file signature.
Raster read_image(const std::string& path);

/// Binary PGM (1 channel) or PPM (3 channels).
void write_pnm(const std::string& path, const Raster& r);

/// 8-bit PNG via libpng.
void write_png(const std::string& path, const Raster& r);

/// PNG when the path ends in .png, PGM/PPM otherwise.
void write_image(const std::string& path, const Raster& r);

/// One point per pixel: (x, y, R, G, B) in RGB mode, (x, y, gray) in gray
/// mode. Every component is divided by its maximum over the image.
PointSet image_points(const Raster& r, ImageMode mode);

}  // namespace sdc::cli
