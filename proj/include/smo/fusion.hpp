#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "smo/grid.hpp"

namespace smo {

struct SaliencyMap {
  Grid<double> values;  // [0, 1]
  std::string source_tag;
  bool clamped = false;  // real-valued input had samples outside [0, 1]
};

struct FusionParams {
  double alpha = 0.6;
  void validate() const;
};

struct ProbabilityMap {
  Grid<double> values;
};

struct BinaryMask {
  Grid<std::uint8_t> values;
  double threshold_used = 0.0;
};

/// 8/16-bit grayscale PNG (divided by the format maximum) or FMAP with D=1
/// (clamped to [0,1], with a warning on stderr when clamping happened).
SaliencyMap load_saliency(const std::filesystem::path& path);

/// (alpha * S + C) / max(alpha * S + C); an all-zero numerator stays zero.
ProbabilityMap fuse(const SaliencyMap& saliency, const Grid<double>& contrast,
                    const FusionParams& params);

/// Pixel is foreground iff its value >= threshold.
BinaryMask threshold_mask(const ProbabilityMap& prob, double threshold);

/// Divides by the maximum, leaving an all-zero map untouched.
Grid<double> normalize_by_max(Grid<double> map);

}  // namespace smo
