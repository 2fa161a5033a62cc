#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "smo/pipeline.hpp"

namespace smo {

/// Layout of a synthetic before/after scene.
///
/// The before image holds `targets` disks and `distractors` shapes over a
/// textured background. The after image keeps the background and the
/// distractors, each moved by up to `jitter` pixels per axis, and drops the
/// targets. Target colors are never used by distractors.
struct SynthSpec {
  int height = 224;
  int width = 224;
  int targets = 1;
  int distractors = 3;
  int radius_min = 14;
  int radius_max = 24;
  int jitter = 6;
  int margin = 24;  // minimum gap between a target and the image border
  double noise = 0.015;
  double saliency_sigma = 4.0;  // blur applied to the ground truth for S^b

  void validate() const;
};

/// Deterministic for a given (seed, spec). The returned pair carries ground
/// truth (the target pixels) and a saliency map (blurred ground truth,
/// normalized to a maximum of 1, or all zero without targets).
ImagePair generate_synthetic_pair(std::uint64_t seed, const SynthSpec& spec);

/// Writes `count` pairs (seeds seed, seed+1, ...) as PNGs plus
/// manifest.jsonl into `out_dir`; returns the manifest records.
std::vector<ManifestRecord> write_synthetic_dataset(const std::filesystem::path& out_dir, int count,
                                                    std::uint64_t seed, const SynthSpec& spec);

/// Heat overlay: out = (1 - s v) * image + s v * red, with s = kOverlayStrength
/// and v the probability at that pixel.
inline constexpr double kOverlayStrength = 0.6;
RgbImage render_overlay(const RgbImage& image, const Grid<double>& prob);

}  // namespace smo
