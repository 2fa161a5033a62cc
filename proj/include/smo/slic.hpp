#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smo/grid.hpp"

namespace smo {

struct SlicParams {
  int region_count_target = 400;  // K
  double compactness = 10.0;
  int iterations = 10;
  /// Components smaller than this fraction of the nominal region area
  /// (pixels / K) are merged into their largest 4-adjacent neighbor.
  double min_region_fraction = 0.25;

  void validate() const;
};

/// A superpixel partition of one image plus the structure derived from it.
///
/// Labels are 0..count-1 without gaps. Adjacency uses 4-connectivity and is
/// stored sorted; `pixel_index` holds each label's member pixels (flat index
/// y * width + x) in raster order, sliced by `pixel_offsets`.
struct SuperpixelLabeling {
  int height = 0;
  int width = 0;
  int count = 0;
  std::vector<std::int32_t> labels;
  std::vector<std::vector<int>> adjacency;
  std::vector<int> boundary;  // sorted labels owning a border pixel
  std::vector<char> on_boundary;  // per label flag, same information as `boundary`
  std::vector<std::size_t> pixel_offsets;  // count + 1 entries
  std::vector<std::int32_t> pixel_index;

  std::size_t pixel_count(int label) const {
    return pixel_offsets[label + 1] - pixel_offsets[label];
  }
  std::span<const std::int32_t> pixels(int label) const {
    return {pixel_index.data() + pixel_offsets[label], pixel_count(label)};
  }
  int label_at(int y, int x) const {
    return labels[static_cast<std::size_t>(y) * width + x];
  }
};

/// Builds a labeling from a raw label grid, deriving adjacency, boundary set
/// and pixel sets. Labels must already be 0..count-1 with every id in use.
SuperpixelLabeling make_labeling(int height, int width, std::vector<std::int32_t> labels);

std::vector<std::vector<int>> compute_adjacency(const SuperpixelLabeling& labeling);
std::vector<int> boundary_labels(const SuperpixelLabeling& labeling);

/// SLIC in CIELAB space. Grid-initialized centers, no random seeding, so the
/// result is a deterministic function of the inputs and independent of the
/// OpenMP schedule.
SuperpixelLabeling segment_slic(const RgbImage& image, const SlicParams& params);

/// Splits every label into its 4-connected components, merges components
/// smaller than `min_size` into the largest adjacent component and renumbers
/// labels by first occurrence in raster order.
std::vector<std::int32_t> enforce_connectivity(int height, int width,
                                               std::span<const std::int32_t> labels,
                                               std::size_t min_size);

/// Returns a copy of `labeling` with label l renamed to permutation[l].
SuperpixelLabeling permute_labels(const SuperpixelLabeling& labeling,
                                  std::span<const int> permutation);

}  // namespace smo
