#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "smo/grid.hpp"
#include "smo/slic.hpp"

namespace smo {

/// Dense H x W x D feature grid, channel-fastest: index (y * W + x) * D + d.
struct FeatureField {
  int height = 0;
  int width = 0;
  int depth = 0;
  std::vector<double> values;

  FeatureField() = default;
  FeatureField(int h, int w, int d)
      : height(h), width(w), depth(d), values(static_cast<std::size_t>(h) * w * d, 0.0) {}

  std::span<double> at(int y, int x) {
    return {values.data() + (static_cast<std::size_t>(y) * width + x) * depth,
            static_cast<std::size_t>(depth)};
  }
  std::span<const double> at(int y, int x) const {
    return {values.data() + (static_cast<std::size_t>(y) * width + x) * depth,
            static_cast<std::size_t>(depth)};
  }

  friend bool operator==(const FeatureField&, const FeatureField&) = default;
};

/// Mean feature vector per superpixel, row-major `count x depth`.
struct SuperpixelFeatureSet {
  int count = 0;
  int depth = 0;
  std::vector<double> vectors;

  std::span<const double> operator[](int label) const {
    return {vectors.data() + static_cast<std::size_t>(label) * depth,
            static_cast<std::size_t>(depth)};
  }
  std::span<double> operator[](int label) {
    return {vectors.data() + static_cast<std::size_t>(label) * depth,
            static_cast<std::size_t>(depth)};
  }
};

// FMAP: "FMAP" magic, u32 version (=1), u32 H, W, D, then H*W*D float32,
// all little-endian, channel-fastest.
FeatureField load_feature_field(const std::filesystem::path& path);
void store_feature_field(const std::filesystem::path& path, const FeatureField& field);

/// Single-channel map as an FMAP with D=1.
void store_map(const std::filesystem::path& path, const Grid<double>& map);

/// Channelwise bilinear upscale, half-pixel sample centers, clamped borders.
FeatureField upscale_field(const FeatureField& field, int factor);

/// f_j = (1/m_j) * sum of field over the pixels of superpixel j.
SuperpixelFeatureSet pool_superpixel_features(const FeatureField& field,
                                              const SuperpixelLabeling& labeling);

/// Same result as pool_superpixel_features(upscale_field(field, factor), labeling)
/// without materializing the upscaled field.
SuperpixelFeatureSet pool_upscaled_features(const FeatureField& field, int factor,
                                            const SuperpixelLabeling& labeling);

/// Nine channels per pixel: CIELAB, window mean of each Lab channel and
/// window standard deviation of each Lab channel. Windows are clipped at
/// the image border.
FeatureField builtin_feature_field(const RgbImage& image, int window);

FeatureField scaled(const FeatureField& field, double factor);

}  // namespace smo
