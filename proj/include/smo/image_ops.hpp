#pragma once

#include <array>
#include <cstdint>

#include "smo/grid.hpp"

namespace smo {

/// sRGB (components in [0,1]) to CIELAB under D65.
std::array<double, 3> srgb_to_lab(double r, double g, double b);

/// Per-pixel CIELAB planes of an image, interleaved like RgbImage.
std::vector<double> image_to_lab(const RgbImage& image);

/// Source coordinate for output index `i` when resampling `in_size` samples
/// to `out_size` (half-pixel centers, clamped to the valid range).
double resample_coord(int i, int in_size, int out_size);

RgbImage resize_bilinear(const RgbImage& image, int height, int width);
Grid<double> resize_bilinear(const Grid<double>& map, int height, int width);
Grid<std::uint8_t> resize_nearest(const Grid<std::uint8_t>& mask, int height, int width);

/// Separable Gaussian blur with clamped borders.
Grid<double> gaussian_blur(const Grid<double>& map, double sigma);

}  // namespace smo
