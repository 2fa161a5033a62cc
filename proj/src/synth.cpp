#include "smo/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>

#include "smo/image_ops.hpp"
#include "smo/io.hpp"

namespace smo {
namespace {

using Color = std::array<float, 3>;

// Saturated object colors; the background is a low-saturation tone.
constexpr std::array<Color, 8> kPalette{{{0.85f, 0.15f, 0.12f},
                                         {0.15f, 0.65f, 0.20f},
                                         {0.15f, 0.25f, 0.85f},
                                         {0.90f, 0.80f, 0.10f},
                                         {0.80f, 0.20f, 0.75f},
                                         {0.10f, 0.75f, 0.80f},
                                         {0.95f, 0.50f, 0.05f},
                                         {0.45f, 0.15f, 0.55f}}};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed * 0x9E3779B97F4A7C15ull + 0x2545F4914F6CDD1Dull) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

struct Shape {
  bool square = false;
  double cx = 0, cy = 0, r = 0;
  Color color{};

  double extent() const { return square ? r * std::sqrt(2.0) : r; }
  bool contains(double x, double y) const {
    const double dx = x - cx, dy = y - cy;
    return square ? std::abs(dx) <= r && std::abs(dy) <= r : dx * dx + dy * dy <= r * r;
  }
};

void draw(RgbImage& image, const Shape& s, Grid<std::uint8_t>* mask = nullptr) {
  const int y0 = std::max(0, static_cast<int>(std::floor(s.cy - s.r - 1)));
  const int y1 = std::min(image.height - 1, static_cast<int>(std::ceil(s.cy + s.r + 1)));
  const int x0 = std::max(0, static_cast<int>(std::floor(s.cx - s.r - 1)));
  const int x1 = std::min(image.width - 1, static_cast<int>(std::ceil(s.cx + s.r + 1)));
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) {
      if (!s.contains(x + 0.5, y + 0.5)) continue;
      for (int c = 0; c < 3; ++c) image.at(y, x, c) = s.color[c];
      if (mask) mask->at(y, x) = 1;
    }
}

}  // namespace

void SynthSpec::validate() const {
  require(height > 0 && width > 0, "synth: image size must be positive");
  require(targets >= 0 && targets < static_cast<int>(kPalette.size()), "synth: too many targets");
  require(distractors >= 0, "synth: negative distractor count");
  require(radius_min >= 1 && radius_min <= radius_max, "synth: bad radius range");
  require(jitter >= 0 && margin >= 0 && noise >= 0 && saliency_sigma >= 0, "synth: negative parameter");
  require(2 * (margin + radius_max) < std::min(height, width),
          "synth: shapes do not fit the image (out of bounds)");
  require(2 * (radius_max * 1.5 + jitter) < std::min(height, width),
          "synth: distractors do not fit the image (out of bounds)");
}

ImagePair generate_synthetic_pair(std::uint64_t seed, const SynthSpec& spec) {
  spec.validate();
  Rng rng(seed);
  const int h = spec.height, w = spec.width;

  // Background: soft two-axis gradient plus a faint weave texture, shared by
  // both images.
  const Color base{static_cast<float>(rng.uniform(0.55, 0.75)), static_cast<float>(rng.uniform(0.55, 0.72)),
                   static_cast<float>(rng.uniform(0.50, 0.68))};
  const double gx = rng.uniform(-0.08, 0.08), gy = rng.uniform(-0.08, 0.08);
  const double freq = rng.uniform(0.15, 0.35), phase = rng.uniform(0.0, 6.28);
  RgbImage background(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double shade = gx * (x / double(w) - 0.5) + gy * (y / double(h) - 0.5) +
                           0.02 * std::sin(freq * x + phase) * std::sin(freq * y) +
                           spec.noise * (rng.uniform() - 0.5) * 2.0;
      for (int c = 0; c < 3; ++c)
        background.at(y, x, c) = static_cast<float>(std::clamp(base[c] + shade, 0.0, 1.0));
    }

  std::array<int, kPalette.size()> order{};
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  for (std::size_t k = order.size() - 1; k > 0; --k)
    std::swap(order[k], order[rng.integer(0, static_cast<int>(k))]);
  auto tinted = [&](int palette_index) {
    Color c = kPalette[order[palette_index]];
    const double f = rng.uniform(0.9, 1.05);
    for (float& v : c) v = static_cast<float>(std::clamp(v * f, 0.0, 1.0));
    return c;
  };

  std::vector<Shape> placed;
  auto place = [&](bool square, double lo_pad, double r) {
    for (int attempt = 0; attempt < 2000; ++attempt) {
      Shape s{square, rng.uniform(lo_pad, w - lo_pad), rng.uniform(lo_pad, h - lo_pad), r, {}};
      const bool clear = std::all_of(placed.begin(), placed.end(), [&](const Shape& o) {
        return std::hypot(s.cx - o.cx, s.cy - o.cy) >= s.extent() + o.extent() + 2.0 * spec.jitter + 4.0;
      });
      if (clear) return s;
    }
    throw InputError("synth: cannot place shapes without overlap; enlarge the image or shrink the shapes");
  };

  std::vector<Shape> targets, distractors;
  for (int t = 0; t < spec.targets; ++t) {
    const double r = rng.integer(spec.radius_min, spec.radius_max);
    Shape s = place(false, spec.margin + r, r);
    s.color = tinted(t);
    placed.push_back(s);
    targets.push_back(s);
  }
  const int free_colors = static_cast<int>(kPalette.size()) - spec.targets;
  for (int d = 0; d < spec.distractors; ++d) {
    const double r = rng.integer(spec.radius_min, spec.radius_max);
    const bool square = d % 2 == 1;
    Shape s = place(square, (square ? r * 1.5 : r) + spec.jitter + 1.0, r);
    s.color = tinted(spec.targets + d % free_colors);
    placed.push_back(s);
    distractors.push_back(s);
  }

  ImagePair pair;
  char id[32];
  std::snprintf(id, sizeof(id), "synth_%04llu", static_cast<unsigned long long>(seed));
  pair.id = id;
  pair.before = background;
  pair.after = background;
  GroundTruthMask gt(h, w, 0);
  for (const auto& s : distractors) draw(pair.before, s);
  for (const auto& s : targets) draw(pair.before, s, &gt);
  for (Shape s : distractors) {
    s.cx += rng.integer(-spec.jitter, spec.jitter);
    s.cy += rng.integer(-spec.jitter, spec.jitter);
    draw(pair.after, s);
  }

  Grid<double> sal(h, w);
  for (std::size_t k = 0; k < gt.size(); ++k) sal.values[k] = gt.values[k];
  double peak = 0;
  sal = gaussian_blur(sal, spec.saliency_sigma);
  for (double v : sal.values) peak = std::max(peak, v);
  if (peak > 0)
    for (double& v : sal.values) v /= peak;
  pair.gt = std::move(gt);
  pair.saliency = SaliencyMap{std::move(sal), "blurred-ground-truth"};
  return pair;
}

std::vector<ManifestRecord> write_synthetic_dataset(const std::filesystem::path& out_dir, int count,
                                                    std::uint64_t seed, const SynthSpec& spec) {
  require(count >= 1, "synth: count must be >= 1");
  std::filesystem::create_directories(out_dir);
  std::vector<ManifestRecord> records;
  for (int k = 0; k < count; ++k) {
    const ImagePair pair = generate_synthetic_pair(seed + static_cast<std::uint64_t>(k), spec);
    ManifestRecord r;
    r.id = pair.id;
    r.before = pair.id + "_before.png";
    r.after = pair.id + "_after.png";
    r.gt = pair.id + "_gt.png";
    r.saliency = pair.id + "_saliency.png";
    write_rgb_png(out_dir / r.before, pair.before);
    write_rgb_png(out_dir / r.after, pair.after);
    write_mask_png(out_dir / r.gt, *pair.gt);
    write_gray_png(out_dir / r.saliency, pair.saliency->values);
    records.push_back(std::move(r));
  }
  write_manifest(out_dir / "manifest.jsonl", records);
  return read_manifest(out_dir / "manifest.jsonl");
}

RgbImage render_overlay(const RgbImage& image, const Grid<double>& prob) {
  require(prob.same_shape(image.height, image.width), "overlay: image and map dimensions differ");
  RgbImage out(image.height, image.width);
  constexpr std::array<double, 3> kHeat{1.0, 0.0, 0.0};
  for (int y = 0; y < image.height; ++y)
    for (int x = 0; x < image.width; ++x) {
      const double s = kOverlayStrength * std::clamp(prob.at(y, x), 0.0, 1.0);
      for (int c = 0; c < 3; ++c)
        out.at(y, x, c) = static_cast<float>((1 - s) * image.at(y, x, c) + s * kHeat[c]);
    }
  return out;
}

}  // namespace smo
