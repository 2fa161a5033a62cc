#include "smo/image_ops.hpp"

#include <algorithm>
#include <cmath>

namespace smo {
namespace {

double linearize(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
  constexpr double kDelta = 6.0 / 29.0;
  return t > kDelta * kDelta * kDelta ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

struct Tap {
  int lo, hi;
  double frac;
};

Tap tap_for(int i, int in_size, int out_size) {
  const double s = resample_coord(i, in_size, out_size);
  const int lo = static_cast<int>(std::floor(s));
  const int hi = std::min(lo + 1, in_size - 1);
  return {lo, hi, s - lo};
}

}  // namespace

std::array<double, 3> srgb_to_lab(double r, double g, double b) {
  const double rl = linearize(r), gl = linearize(g), bl = linearize(b);
  const double x = 0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl;
  const double y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl;
  const double z = 0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl;
  const double fx = lab_f(x / 0.95047);
  const double fy = lab_f(y / 1.0);
  const double fz = lab_f(z / 1.08883);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

std::vector<double> image_to_lab(const RgbImage& image) {
  std::vector<double> lab(image.values.size());
  const auto n = static_cast<std::ptrdiff_t>(image.pixel_count());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto* p = &image.values[static_cast<std::size_t>(k) * 3];
    const auto v = srgb_to_lab(p[0], p[1], p[2]);
    std::copy(v.begin(), v.end(), lab.begin() + k * 3);
  }
  return lab;
}

double resample_coord(int i, int in_size, int out_size) {
  const double s = (i + 0.5) * static_cast<double>(in_size) / out_size - 0.5;
  return std::clamp(s, 0.0, static_cast<double>(in_size - 1));
}

RgbImage resize_bilinear(const RgbImage& image, int height, int width) {
  require(!image.empty(), "resize: empty image");
  require(height > 0 && width > 0, "resize: target size must be positive");
  if (image.height == height && image.width == width) return image;
  RgbImage out(height, width);
  for (int y = 0; y < height; ++y) {
    const Tap ty = tap_for(y, image.height, height);
    for (int x = 0; x < width; ++x) {
      const Tap tx = tap_for(x, image.width, width);
      for (int c = 0; c < 3; ++c) {
        const double top = (1 - tx.frac) * image.at(ty.lo, tx.lo, c) + tx.frac * image.at(ty.lo, tx.hi, c);
        const double bot = (1 - tx.frac) * image.at(ty.hi, tx.lo, c) + tx.frac * image.at(ty.hi, tx.hi, c);
        out.at(y, x, c) = static_cast<float>((1 - ty.frac) * top + ty.frac * bot);
      }
    }
  }
  return out;
}

Grid<double> resize_bilinear(const Grid<double>& map, int height, int width) {
  require(!map.empty(), "resize: empty map");
  require(height > 0 && width > 0, "resize: target size must be positive");
  if (map.same_shape(height, width)) return map;
  Grid<double> out(height, width);
  for (int y = 0; y < height; ++y) {
    const Tap ty = tap_for(y, map.height, height);
    for (int x = 0; x < width; ++x) {
      const Tap tx = tap_for(x, map.width, width);
      const double top = (1 - tx.frac) * map.at(ty.lo, tx.lo) + tx.frac * map.at(ty.lo, tx.hi);
      const double bot = (1 - tx.frac) * map.at(ty.hi, tx.lo) + tx.frac * map.at(ty.hi, tx.hi);
      out.at(y, x) = (1 - ty.frac) * top + ty.frac * bot;
    }
  }
  return out;
}

Grid<std::uint8_t> resize_nearest(const Grid<std::uint8_t>& mask, int height, int width) {
  require(!mask.empty(), "resize: empty mask");
  require(height > 0 && width > 0, "resize: target size must be positive");
  if (mask.same_shape(height, width)) return mask;
  Grid<std::uint8_t> out(height, width);
  for (int y = 0; y < height; ++y) {
    const int sy = std::min(mask.height - 1, static_cast<int>((y + 0.5) * mask.height / height));
    for (int x = 0; x < width; ++x) {
      const int sx = std::min(mask.width - 1, static_cast<int>((x + 0.5) * mask.width / width));
      out.at(y, x) = mask.at(sy, sx);
    }
  }
  return out;
}

Grid<double> gaussian_blur(const Grid<double>& map, double sigma) {
  if (sigma <= 0 || map.empty()) return map;
  const int radius = static_cast<int>(std::ceil(3 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double total = 0;
  for (int k = -radius; k <= radius; ++k) {
    kernel[k + radius] = std::exp(-0.5 * k * k / (sigma * sigma));
    total += kernel[k + radius];
  }
  for (double& w : kernel) w /= total;

  Grid<double> tmp(map.height, map.width), out(map.height, map.width);
  for (int y = 0; y < map.height; ++y)
    for (int x = 0; x < map.width; ++x) {
      double acc = 0;
      for (int k = -radius; k <= radius; ++k)
        acc += kernel[k + radius] * map.at(y, std::clamp(x + k, 0, map.width - 1));
      tmp.at(y, x) = acc;
    }
  for (int y = 0; y < map.height; ++y)
    for (int x = 0; x < map.width; ++x) {
      double acc = 0;
      for (int k = -radius; k <= radius; ++k)
        acc += kernel[k + radius] * tmp.at(std::clamp(y + k, 0, map.height - 1), x);
      out.at(y, x) = acc;
    }
  return out;
}

}  // namespace smo
