#include "smo/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "smo/features.hpp"
#include "smo/io.hpp"

namespace smo {

void FusionParams::validate() const {
  require(alpha >= 0.0 && alpha <= 1.0, "fusion: alpha must lie in [0, 1]");
}

SaliencyMap load_saliency(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw InputError("saliency map not found: " + path.string());
  SaliencyMap out;
  out.source_tag = path.filename().string();
  if (has_fmap_magic(path)) {
    const FeatureField field = load_feature_field(path);
    require(field.depth == 1, "saliency: FMAP must have D=1: " + path.string());
    out.values = Grid<double>(field.height, field.width);
    for (std::size_t k = 0; k < field.values.size(); ++k) {
      const double v = field.values[k];
      out.clamped = out.clamped || v < 0.0 || v > 1.0;
      out.values.values[k] = std::clamp(v, 0.0, 1.0);
    }
    if (out.clamped) std::cerr << "warning: saliency values outside [0,1] clamped in " << path << "\n";
    return out;
  }
  const GrayPng png = read_gray_png(path);
  out.values = Grid<double>(png.samples.height, png.samples.width);
  for (std::size_t k = 0; k < png.samples.size(); ++k)
    out.values.values[k] = static_cast<double>(png.samples.values[k]) / png.max_value;
  return out;
}

Grid<double> normalize_by_max(Grid<double> map) {
  double peak = 0.0;
  for (double v : map.values) peak = std::max(peak, v);
  if (peak > 0)
    for (double& v : map.values) v /= peak;
  return map;
}

ProbabilityMap fuse(const SaliencyMap& saliency, const Grid<double>& contrast,
                    const FusionParams& params) {
  params.validate();
  require(saliency.values.same_shape(contrast), "fusion: saliency and contrast dimensions differ");
  Grid<double> sum(contrast.height, contrast.width);
  for (std::size_t k = 0; k < sum.size(); ++k)
    sum.values[k] = params.alpha * saliency.values.values[k] + contrast.values[k];
  return {normalize_by_max(std::move(sum))};
}

BinaryMask threshold_mask(const ProbabilityMap& prob, double threshold) {
  require(threshold >= 0.0 && threshold <= 1.0, "threshold must lie in [0, 1]");
  BinaryMask out{Grid<std::uint8_t>(prob.values.height, prob.values.width), threshold};
  for (std::size_t k = 0; k < prob.values.size(); ++k)
    out.values.values[k] = prob.values.values[k] >= threshold;
  return out;
}

}  // namespace smo
