#include "smo/features.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "smo/image_ops.hpp"

namespace smo {
namespace {

static_assert(std::endian::native == std::endian::little, "FMAP I/O assumes a little-endian host");

constexpr char kMagic[4] = {'F', 'M', 'A', 'P'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 20;

struct Tap {
  int lo, hi;
  double frac;
};

std::vector<Tap> taps(int in_size, int out_size) {
  std::vector<Tap> out(out_size);
  for (int i = 0; i < out_size; ++i) {
    const double s = resample_coord(i, in_size, out_size);
    const int lo = static_cast<int>(std::floor(s));
    out[i] = {lo, std::min(lo + 1, in_size - 1), s - lo};
  }
  return out;
}

// Bilinear sample of every channel at upscaled pixel (tx, ty).
void interpolate(const FeatureField& field, const Tap& ty, const Tap& tx, double* out) {
  const auto p00 = field.at(ty.lo, tx.lo), p01 = field.at(ty.lo, tx.hi);
  const auto p10 = field.at(ty.hi, tx.lo), p11 = field.at(ty.hi, tx.hi);
  for (int d = 0; d < field.depth; ++d) {
    const double top = (1 - tx.frac) * p00[d] + tx.frac * p01[d];
    const double bot = (1 - tx.frac) * p10[d] + tx.frac * p11[d];
    out[d] = (1 - ty.frac) * top + ty.frac * bot;
  }
}

}  // namespace

FeatureField load_feature_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("fmap: cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const auto file_size = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  require(file_size >= kHeaderBytes, "fmap: truncated header in " + path.string());

  char magic[4];
  std::uint32_t header[4];
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(header), sizeof(header));
  require(std::memcmp(magic, kMagic, 4) == 0, "fmap: bad magic in " + path.string());
  require(header[0] == kVersion, "fmap: unsupported version " + std::to_string(header[0]));
  const std::uint32_t h = header[1], w = header[2], d = header[3];
  require(h > 0 && w > 0 && d > 0, "fmap: zero dimension in " + path.string());
  const std::size_t count = std::size_t{h} * w * d;
  require(file_size == kHeaderBytes + count * sizeof(float),
          "fmap: payload size does not match header in " + path.string());

  std::vector<float> payload(count);
  in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(count * sizeof(float)));
  require(static_cast<bool>(in), "fmap: read failed for " + path.string());

  FeatureField field(static_cast<int>(h), static_cast<int>(w), static_cast<int>(d));
  for (std::size_t k = 0; k < count; ++k) {
    require(std::isfinite(payload[k]), "fmap: non-finite value in " + path.string());
    field.values[k] = payload[k];
  }
  return field;
}

void store_feature_field(const std::filesystem::path& path, const FeatureField& field) {
  require(field.height > 0 && field.width > 0 && field.depth > 0, "fmap: empty field");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("fmap: cannot write " + path.string());
  const std::uint32_t header[4] = {kVersion, static_cast<std::uint32_t>(field.height),
                                   static_cast<std::uint32_t>(field.width),
                                   static_cast<std::uint32_t>(field.depth)};
  out.write(kMagic, 4);
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  std::vector<float> payload(field.values.begin(), field.values.end());
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size() * sizeof(float)));
  if (!out) throw InputError("fmap: write failed for " + path.string());
}

void store_map(const std::filesystem::path& path, const Grid<double>& map) {
  FeatureField field(map.height, map.width, 1);
  field.values = map.values;
  store_feature_field(path, field);
}

FeatureField upscale_field(const FeatureField& field, int factor) {
  require(factor >= 1, "upscale: factor must be >= 1");
  if (factor == 1) return field;
  const int oh = field.height * factor, ow = field.width * factor;
  const auto ty = taps(field.height, oh), tx = taps(field.width, ow);
  FeatureField out(oh, ow, field.depth);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < oh; ++y)
    for (int x = 0; x < ow; ++x) interpolate(field, ty[y], tx[x], out.at(y, x).data());
  return out;
}

SuperpixelFeatureSet pool_superpixel_features(const FeatureField& field,
                                              const SuperpixelLabeling& labeling) {
  require(field.height == labeling.height && field.width == labeling.width,
          "pool: feature field and labeling dimensions differ");
  SuperpixelFeatureSet out{labeling.count, field.depth,
                           std::vector<double>(static_cast<std::size_t>(labeling.count) * field.depth, 0.0)};
#pragma omp parallel for schedule(dynamic, 8)
  for (int label = 0; label < labeling.count; ++label) {
    auto acc = out[label];
    for (auto k : labeling.pixels(label)) {
      const double* v = field.values.data() + static_cast<std::size_t>(k) * field.depth;
      for (int d = 0; d < field.depth; ++d) acc[d] += v[d];
    }
    const double m = static_cast<double>(labeling.pixel_count(label));
    for (double& a : acc) a /= m;
  }
  return out;
}

SuperpixelFeatureSet pool_upscaled_features(const FeatureField& field, int factor,
                                            const SuperpixelLabeling& labeling) {
  require(factor >= 1, "upscale: factor must be >= 1");
  if (factor == 1) return pool_superpixel_features(field, labeling);
  require(field.height * factor == labeling.height && field.width * factor == labeling.width,
          "pool: upscaled feature field and labeling dimensions differ");
  const auto ty = taps(field.height, labeling.height), tx = taps(field.width, labeling.width);
  SuperpixelFeatureSet out{labeling.count, field.depth,
                           std::vector<double>(static_cast<std::size_t>(labeling.count) * field.depth, 0.0)};
#pragma omp parallel
  {
    std::vector<double> sample(field.depth);
#pragma omp for schedule(dynamic, 8)
    for (int label = 0; label < labeling.count; ++label) {
      auto acc = out[label];
      for (auto k : labeling.pixels(label)) {
        interpolate(field, ty[k / labeling.width], tx[k % labeling.width], sample.data());
        for (int d = 0; d < field.depth; ++d) acc[d] += sample[d];
      }
      const double m = static_cast<double>(labeling.pixel_count(label));
      for (double& a : acc) a /= m;
    }
  }
  return out;
}

FeatureField builtin_feature_field(const RgbImage& image, int window) {
  require(!image.empty(), "builtin features: empty image");
  require(window >= 1 && window % 2 == 1, "builtin features: window must be odd and positive");
  const int h = image.height, w = image.width, r = window / 2;
  const std::vector<double> lab = image_to_lab(image);
  FeatureField out(h, w, 9);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int y0 = std::max(0, y - r), y1 = std::min(h - 1, y + r);
      const int x0 = std::max(0, x - r), x1 = std::min(w - 1, x + r);
      const double n = double(y1 - y0 + 1) * (x1 - x0 + 1);
      // Deviations are taken from the center sample so a flat window gives exactly zero.
      const double* center = &lab[(static_cast<std::size_t>(y) * w + x) * 3];
      std::array<double, 3> shift{}, var{};
      for (int yy = y0; yy <= y1; ++yy)
        for (int xx = x0; xx <= x1; ++xx) {
          const double* p = &lab[(static_cast<std::size_t>(yy) * w + xx) * 3];
          for (int c = 0; c < 3; ++c) shift[c] += p[c] - center[c];
        }
      for (double& m : shift) m /= n;
      for (int yy = y0; yy <= y1; ++yy)
        for (int xx = x0; xx <= x1; ++xx) {
          const double* p = &lab[(static_cast<std::size_t>(yy) * w + xx) * 3];
          for (int c = 0; c < 3; ++c) {
            const double dev = p[c] - center[c] - shift[c];
            var[c] += dev * dev;
          }
        }
      auto v = out.at(y, x);
      for (int c = 0; c < 3; ++c) {
        v[c] = center[c];
        v[3 + c] = center[c] + shift[c];
        v[6 + c] = std::sqrt(var[c] / n);
      }
    }
  }
  return out;
}

FeatureField scaled(const FeatureField& field, double factor) {
  FeatureField out = field;
  for (double& v : out.values) v *= factor;
  return out;
}

}  // namespace smo
