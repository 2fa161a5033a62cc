#include "smo/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace smo {
namespace {

cv::Mat read_unchanged(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw InputError("image not found: " + path.string());
  cv::Mat m = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (m.empty()) throw InputError("cannot decode image: " + path.string());
  require(m.depth() == CV_8U || m.depth() == CV_16U, "unsupported bit depth in " + path.string());
  return m;
}

void write_or_throw(const std::filesystem::path& path, const cv::Mat& m) {
  if (!cv::imwrite(path.string(), m)) throw InputError("cannot write image: " + path.string());
}

}  // namespace

RgbImage read_rgb_png(const std::filesystem::path& path) {
  const cv::Mat m = read_unchanged(path);
  const double scale = m.depth() == CV_8U ? 255.0 : 65535.0;
  const int ch = m.channels();
  RgbImage out(m.rows, m.cols);
  for (int y = 0; y < m.rows; ++y)
    for (int x = 0; x < m.cols; ++x) {
      // OpenCV stores color as BGR(A).
      for (int c = 0; c < 3; ++c) {
        const int src = ch >= 3 ? 2 - c : 0;
        const double v = m.depth() == CV_8U ? m.ptr<std::uint8_t>(y)[x * ch + src]
                                            : m.ptr<std::uint16_t>(y)[x * ch + src];
        out.at(y, x, c) = static_cast<float>(v / scale);
      }
    }
  return out;
}

void write_rgb_png(const std::filesystem::path& path, const RgbImage& image) {
  cv::Mat m(image.height, image.width, CV_8UC3);
  for (int y = 0; y < image.height; ++y)
    for (int x = 0; x < image.width; ++x)
      for (int c = 0; c < 3; ++c) {
        const double v = std::clamp(static_cast<double>(image.at(y, x, c)), 0.0, 1.0);
        m.ptr<std::uint8_t>(y)[x * 3 + (2 - c)] = static_cast<std::uint8_t>(std::lround(v * 255.0));
      }
  write_or_throw(path, m);
}

GrayPng read_gray_png(const std::filesystem::path& path) {
  const cv::Mat m = read_unchanged(path);
  require(m.channels() == 1, "expected a single-channel image: " + path.string());
  GrayPng out{Grid<std::uint16_t>(m.rows, m.cols), m.depth() == CV_8U ? 255u : 65535u};
  for (int y = 0; y < m.rows; ++y)
    for (int x = 0; x < m.cols; ++x)
      out.samples.at(y, x) = m.depth() == CV_8U ? m.ptr<std::uint8_t>(y)[x] : m.ptr<std::uint16_t>(y)[x];
  return out;
}

Grid<std::uint8_t> read_mask_png(const std::filesystem::path& path) {
  const GrayPng g = read_gray_png(path);
  Grid<std::uint8_t> mask(g.samples.height, g.samples.width);
  for (std::size_t k = 0; k < mask.size(); ++k) mask.values[k] = g.samples.values[k] != 0;
  return mask;
}

void write_gray_png(const std::filesystem::path& path, const Grid<double>& map) {
  cv::Mat m(map.height, map.width, CV_8UC1);
  for (int y = 0; y < map.height; ++y)
    for (int x = 0; x < map.width; ++x)
      m.ptr<std::uint8_t>(y)[x] =
          static_cast<std::uint8_t>(std::lround(std::clamp(map.at(y, x), 0.0, 1.0) * 255.0));
  write_or_throw(path, m);
}

void write_mask_png(const std::filesystem::path& path, const Grid<std::uint8_t>& mask) {
  cv::Mat m(mask.height, mask.width, CV_8UC1);
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x) m.ptr<std::uint8_t>(y)[x] = mask.at(y, x) ? 255 : 0;
  write_or_throw(path, m);
}

void write_label_png(const std::filesystem::path& path, int height, int width,
                     const std::vector<std::int32_t>& labels) {
  cv::Mat m(height, width, CV_16UC1);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      const auto l = labels[static_cast<std::size_t>(y) * width + x];
      require(l >= 0 && l < 65536, "label png: label out of 16-bit range");
      m.ptr<std::uint16_t>(y)[x] = static_cast<std::uint16_t>(l);
    }
  write_or_throw(path, m);
}

bool has_fmap_magic(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[4] = {};
  in.read(magic, 4);
  return in && std::equal(magic, magic + 4, "FMAP");
}

}  // namespace smo
