#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace smo {

/// Thrown for malformed inputs: bad files, dimension mismatches, out-of-range
/// parameters. The CLI maps it to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major H x W grid of one value per pixel.
template <class T>
struct Grid {
  int height = 0;
  int width = 0;
  std::vector<T> values;

  Grid() = default;
  Grid(int h, int w, T fill = T{})
      : height(h), width(w), values(static_cast<std::size_t>(h) * w, fill) {}

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }

  T& at(int y, int x) { return values[static_cast<std::size_t>(y) * width + x]; }
  const T& at(int y, int x) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }

  bool same_shape(int h, int w) const { return height == h && width == w; }
  template <class U>
  bool same_shape(const Grid<U>& other) const {
    return height == other.height && width == other.width;
  }

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Interleaved RGB raster, channels in [0, 1].
struct RgbImage {
  int height = 0;
  int width = 0;
  std::vector<float> values;  // (y * width + x) * 3 + c

  RgbImage() = default;
  RgbImage(int h, int w) : height(h), width(w), values(static_cast<std::size_t>(h) * w * 3, 0.0f) {}

  bool empty() const { return values.empty(); }
  std::size_t pixel_count() const { return static_cast<std::size_t>(height) * width; }

  float& at(int y, int x, int c) {
    return values[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  float at(int y, int x, int c) const {
    return values[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InputError(what);
}

}  // namespace smo
