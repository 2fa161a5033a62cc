#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "smo/features.hpp"
#include "smo/grid.hpp"
#include "smo/slic.hpp"

namespace smo::fixture {

inline RgbImage constant_image(int h, int w, float r, float g, float b) {
  RgbImage img(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      img.at(y, x, 0) = r;
      img.at(y, x, 1) = g;
      img.at(y, x, 2) = b;
    }
  return img;
}

/// Piecewise-constant blocks of random colors with mild noise.
inline RgbImage blocky_image(int h, int w, int block, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> color(0.0f, 1.0f), noise(-0.02f, 0.02f);
  const int by = (h + block - 1) / block, bx = (w + block - 1) / block;
  std::vector<float> palette(static_cast<std::size_t>(by) * bx * 3);
  for (float& v : palette) v = color(rng);
  RgbImage img(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) {
        const float v = palette[((y / block) * bx + x / block) * 3 + c] + noise(rng);
        img.at(y, x, c) = std::clamp(v, 0.0f, 1.0f);
      }
  return img;
}

/// Regular grid of ry x rx rectangular labels.
inline SuperpixelLabeling grid_labeling(int h, int w, int ry, int rx) {
  std::vector<std::int32_t> labels(static_cast<std::size_t>(h) * w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) labels[y * w + x] = (y * ry / h) * rx + (x * rx / w);
  return make_labeling(h, w, std::move(labels));
}

/// Arbitrary (possibly disconnected) labeling using every id in 0..count-1.
inline std::vector<std::int32_t> random_labels(int h, int w, int count, std::mt19937_64& rng) {
  std::vector<std::int32_t> labels(static_cast<std::size_t>(h) * w);
  std::uniform_int_distribution<int> pick(0, count - 1);
  for (auto& l : labels) l = pick(rng);
  for (int l = 0; l < count && l < static_cast<int>(labels.size()); ++l) labels[l] = l;
  std::shuffle(labels.begin(), labels.end(), rng);
  return labels;
}

inline FeatureField random_field(int h, int w, int d, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  FeatureField f(h, w, d);
  for (double& v : f.values) v = u(rng);
  return f;
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace smo::fixture
