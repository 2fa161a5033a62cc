#include "smo/slic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include "smo/image_ops.hpp"

namespace smo {
namespace {

struct Center {
  double l, a, b, x, y;
};

// Union-find over connected components, merged by size.
struct Components {
  std::vector<int> parent;
  std::vector<std::size_t> size;

  int find(int c) {
    while (parent[c] != c) {
      parent[c] = parent[parent[c]];
      c = parent[c];
    }
    return c;
  }
};

}  // namespace

void SlicParams::validate() const {
  require(region_count_target >= 1, "slic: region_count_target must be >= 1");
  require(iterations >= 1, "slic: iterations must be >= 1");
  require(compactness > 0 && std::isfinite(compactness), "slic: compactness must be positive");
  require(min_region_fraction > 0 && min_region_fraction < 1,
          "slic: min_region_fraction must lie in (0, 1)");
}

SuperpixelLabeling make_labeling(int height, int width, std::vector<std::int32_t> labels) {
  require(height > 0 && width > 0, "labeling: empty grid");
  require(labels.size() == static_cast<std::size_t>(height) * width, "labeling: size mismatch");
  SuperpixelLabeling out;
  out.height = height;
  out.width = width;
  std::int32_t max_label = -1;
  for (auto l : labels) {
    require(l >= 0, "labeling: negative label");
    max_label = std::max(max_label, l);
  }
  out.count = max_label + 1;
  out.labels = std::move(labels);

  out.pixel_offsets.assign(out.count + 1, 0);
  for (auto l : out.labels) ++out.pixel_offsets[l + 1];
  for (int l = 0; l < out.count; ++l) {
    require(out.pixel_offsets[l + 1] > 0, "labeling: label ids must be contiguous");
    out.pixel_offsets[l + 1] += out.pixel_offsets[l];
  }
  out.pixel_index.resize(out.labels.size());
  std::vector<std::size_t> cursor(out.pixel_offsets.begin(), out.pixel_offsets.end() - 1);
  for (std::size_t k = 0; k < out.labels.size(); ++k)
    out.pixel_index[cursor[out.labels[k]]++] = static_cast<std::int32_t>(k);

  out.adjacency = compute_adjacency(out);
  out.boundary = boundary_labels(out);
  out.on_boundary.assign(out.count, 0);
  for (int l : out.boundary) out.on_boundary[l] = 1;
  return out;
}

std::vector<std::vector<int>> compute_adjacency(const SuperpixelLabeling& labeling) {
  std::vector<std::set<int>> sets(labeling.count);
  auto link = [&](int p, int q) {
    if (p != q) {
      sets[p].insert(q);
      sets[q].insert(p);
    }
  };
  for (int y = 0; y < labeling.height; ++y)
    for (int x = 0; x < labeling.width; ++x) {
      const int l = labeling.label_at(y, x);
      if (x + 1 < labeling.width) link(l, labeling.label_at(y, x + 1));
      if (y + 1 < labeling.height) link(l, labeling.label_at(y + 1, x));
    }
  std::vector<std::vector<int>> adjacency(labeling.count);
  for (int l = 0; l < labeling.count; ++l) adjacency[l].assign(sets[l].begin(), sets[l].end());
  return adjacency;
}

std::vector<int> boundary_labels(const SuperpixelLabeling& labeling) {
  std::vector<char> seen(labeling.count, 0);
  const int h = labeling.height, w = labeling.width;
  for (int x = 0; x < w; ++x) {
    seen[labeling.label_at(0, x)] = 1;
    seen[labeling.label_at(h - 1, x)] = 1;
  }
  for (int y = 0; y < h; ++y) {
    seen[labeling.label_at(y, 0)] = 1;
    seen[labeling.label_at(y, w - 1)] = 1;
  }
  std::vector<int> out;
  for (int l = 0; l < labeling.count; ++l)
    if (seen[l]) out.push_back(l);
  return out;
}

std::vector<std::int32_t> enforce_connectivity(int height, int width,
                                               std::span<const std::int32_t> labels,
                                               std::size_t min_size) {
  const std::size_t n = labels.size();
  std::vector<int> comp(n, -1);
  std::vector<std::size_t> comp_size;
  std::vector<int> queue;
  queue.reserve(n);

  // 4-connected components, numbered in raster order of their first pixel.
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(comp_size.size());
    queue.clear();
    queue.push_back(static_cast<int>(start));
    comp[start] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int k = queue[head];
      const int y = k / width, x = k % width;
      const int nbrs[4][2] = {{y - 1, x}, {y + 1, x}, {y, x - 1}, {y, x + 1}};
      for (const auto& nb : nbrs) {
        if (nb[0] < 0 || nb[0] >= height || nb[1] < 0 || nb[1] >= width) continue;
        const int q = nb[0] * width + nb[1];
        if (comp[q] < 0 && labels[q] == labels[k]) {
          comp[q] = id;
          queue.push_back(q);
        }
      }
    }
    comp_size.push_back(queue.size());
  }

  const int ncomp = static_cast<int>(comp_size.size());
  std::vector<std::set<int>> comp_adj(ncomp);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      const int c = comp[y * width + x];
      if (x + 1 < width && comp[y * width + x + 1] != c) {
        comp_adj[c].insert(comp[y * width + x + 1]);
        comp_adj[comp[y * width + x + 1]].insert(c);
      }
      if (y + 1 < height && comp[(y + 1) * width + x] != c) {
        comp_adj[c].insert(comp[(y + 1) * width + x]);
        comp_adj[comp[(y + 1) * width + x]].insert(c);
      }
    }

  Components uf{std::vector<int>(ncomp), comp_size};
  std::iota(uf.parent.begin(), uf.parent.end(), 0);
  for (int c = 0; c < ncomp; ++c) {
    if (comp_size[c] >= min_size) continue;
    const int root = uf.find(c);
    if (uf.size[root] >= min_size) continue;
    int best = -1;
    for (int nb : comp_adj[c]) {
      const int r = uf.find(nb);
      if (r == root) continue;
      if (best < 0 || uf.size[r] > uf.size[best] || (uf.size[r] == uf.size[best] && r < best))
        best = r;
    }
    if (best < 0) continue;
    uf.parent[root] = best;
    uf.size[best] += uf.size[root];
  }

  std::vector<std::int32_t> remap(ncomp, -1);
  std::vector<std::int32_t> out(n);
  std::int32_t next = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const int r = uf.find(comp[k]);
    if (remap[r] < 0) remap[r] = next++;
    out[k] = remap[r];
  }
  return out;
}

SuperpixelLabeling segment_slic(const RgbImage& image, const SlicParams& params) {
  require(!image.empty(), "slic: empty image");
  params.validate();
  const int h = image.height, w = image.width;
  const std::size_t npix = image.pixel_count();
  require(static_cast<std::size_t>(params.region_count_target) <= npix,
          "slic: region_count_target exceeds pixel count");

  const int K = params.region_count_target;
  const int nx = std::clamp(static_cast<int>(std::ceil(std::sqrt(double(K) * w / h) - 1e-9)), 1, w);
  const int ny = std::clamp(static_cast<int>(std::lround(double(K) / nx)), 1, h);
  const double step = std::sqrt(double(npix) / (nx * ny));
  const double spatial_weight = (params.compactness / step) * (params.compactness / step);

  const std::vector<double> lab = image_to_lab(image);

  std::vector<Center> centers;
  centers.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double cx = (i + 0.5) * w / nx;
      const double cy = (j + 0.5) * h / ny;
      const int px = std::min(w - 1, static_cast<int>(cx));
      const int py = std::min(h - 1, static_cast<int>(cy));
      const double* c = &lab[(static_cast<std::size_t>(py) * w + px) * 3];
      centers.push_back({c[0], c[1], c[2], cx, cy});
    }
  const int ncenters = static_cast<int>(centers.size());

  const int bx_count = static_cast<int>(std::ceil(w / step)) + 1;
  const int by_count = static_cast<int>(std::ceil(h / step)) + 1;
  std::vector<std::int32_t> assign(npix, 0);
  std::vector<std::size_t> bucket_offsets;
  std::vector<int> bucket_items;

  auto distance = [&](const Center& c, const double* p, double x, double y) {
    const double dl = p[0] - c.l, da = p[1] - c.a, db = p[2] - c.b;
    const double dx = x - c.x, dy = y - c.y;
    return dl * dl + da * da + db * db + spatial_weight * (dx * dx + dy * dy);
  };
  auto bucket_of = [&](double v, int limit) {
    return std::clamp(static_cast<int>(std::floor(v / step)), 0, limit - 1);
  };

  for (int iter = 0; iter < params.iterations; ++iter) {
    // Bucket centers on a step-sized grid so each pixel only visits the
    // centers whose 2S x 2S window can contain it.
    bucket_offsets.assign(static_cast<std::size_t>(bx_count) * by_count + 1, 0);
    for (const Center& c : centers)
      ++bucket_offsets[bucket_of(c.y, by_count) * bx_count + bucket_of(c.x, bx_count) + 1];
    std::partial_sum(bucket_offsets.begin(), bucket_offsets.end(), bucket_offsets.begin());
    bucket_items.resize(centers.size());
    {
      std::vector<std::size_t> cur(bucket_offsets.begin(), bucket_offsets.end() - 1);
      for (int k = 0; k < ncenters; ++k) {
        const Center& c = centers[k];
        bucket_items[cur[bucket_of(c.y, by_count) * bx_count + bucket_of(c.x, bx_count)]++] = k;
      }
    }

#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
      const double py = y + 0.5;
      const int by0 = bucket_of(py - step, by_count), by1 = bucket_of(py + step, by_count);
      for (int x = 0; x < w; ++x) {
        const double px = x + 0.5;
        const std::size_t k = static_cast<std::size_t>(y) * w + x;
        const double* p = &lab[k * 3];
        const int bx0 = bucket_of(px - step, bx_count), bx1 = bucket_of(px + step, bx_count);
        double best = std::numeric_limits<double>::infinity();
        int best_idx = -1;
        for (int by = by0; by <= by1; ++by)
          for (int bx = bx0; bx <= bx1; ++bx) {
            const std::size_t b = static_cast<std::size_t>(by) * bx_count + bx;
            for (std::size_t t = bucket_offsets[b]; t < bucket_offsets[b + 1]; ++t) {
              const int idx = bucket_items[t];
              const Center& c = centers[idx];
              if (std::abs(px - c.x) > step || std::abs(py - c.y) > step) continue;
              const double d = distance(c, p, px, py);
              if (d < best || (d == best && idx < best_idx)) {
                best = d;
                best_idx = idx;
              }
            }
          }
        if (best_idx < 0) {
          for (int idx = 0; idx < ncenters; ++idx) {
            const double d = distance(centers[idx], p, px, py);
            if (d < best) {
              best = d;
              best_idx = idx;
            }
          }
        }
        assign[k] = best_idx;
      }
    }

    // Exact per-center accumulation in raster order.
    std::vector<std::array<double, 6>> acc(ncenters, {0, 0, 0, 0, 0, 0});
    for (std::size_t k = 0; k < npix; ++k) {
      auto& a = acc[assign[k]];
      a[0] += lab[k * 3];
      a[1] += lab[k * 3 + 1];
      a[2] += lab[k * 3 + 2];
      a[3] += static_cast<double>(k % w) + 0.5;
      a[4] += static_cast<double>(k / w) + 0.5;
      a[5] += 1;
    }
    for (int c = 0; c < ncenters; ++c) {
      const auto& a = acc[c];
      if (a[5] == 0) continue;
      centers[c] = {a[0] / a[5], a[1] / a[5], a[2] / a[5], a[3] / a[5], a[4] / a[5]};
    }
  }

  const auto min_size = static_cast<std::size_t>(params.min_region_fraction * double(npix) / K);
  return make_labeling(h, w, enforce_connectivity(h, w, assign, min_size));
}

SuperpixelLabeling permute_labels(const SuperpixelLabeling& labeling,
                                  std::span<const int> permutation) {
  require(permutation.size() == static_cast<std::size_t>(labeling.count),
          "permute_labels: permutation length mismatch");
  std::vector<std::int32_t> labels(labeling.labels.size());
  for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = permutation[labeling.labels[k]];
  return make_labeling(labeling.height, labeling.width, std::move(labels));
}

}  // namespace smo
