#pragma once

#include <cstdint>
#include <filesystem>

#include "smo/grid.hpp"

namespace smo {

/// Loads any 8/16-bit PNG (gray, RGB, with or without alpha) as RGB in [0,1].
RgbImage read_rgb_png(const std::filesystem::path& path);
void write_rgb_png(const std::filesystem::path& path, const RgbImage& image);

/// Single-channel PNG as raw integer samples plus the format maximum
/// (255 or 65535). Multi-channel files are rejected.
struct GrayPng {
  Grid<std::uint16_t> samples;
  std::uint32_t max_value = 255;
};
GrayPng read_gray_png(const std::filesystem::path& path);

/// Any nonzero sample is foreground.
Grid<std::uint8_t> read_mask_png(const std::filesystem::path& path);

/// Values in [0,1] quantized to 8 bits (round to nearest).
void write_gray_png(const std::filesystem::path& path, const Grid<double>& map);
/// 0/1 mask written as 0/255.
void write_mask_png(const std::filesystem::path& path, const Grid<std::uint8_t>& mask);
/// Label grid as 16-bit single-channel PNG; labels must be < 65536.
void write_label_png(const std::filesystem::path& path, int height, int width,
                     const std::vector<std::int32_t>& labels);

bool has_fmap_magic(const std::filesystem::path& path);

}  // namespace smo
