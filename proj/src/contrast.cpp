#include "smo/contrast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smo {
namespace {

void check_pair(const SuperpixelFeatureSet& feats_b, const SuperpixelFeatureSet& feats_a) {
  require(feats_a.count > 0, "contrast: after image has no superpixels");
  require(feats_a.depth == feats_b.depth, "contrast: feature dimensionality mismatch");
}

std::vector<char> boundary_flags(int count, std::span<const int> boundary) {
  std::vector<char> flags(count, 0);
  for (int l : boundary) {
    require(l >= 0 && l < count, "contrast: boundary label out of range");
    flags[l] = 1;
  }
  return flags;
}

}  // namespace

double feature_distance(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double diff = x[d] - y[d];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

std::vector<double> local_contrast(const SuperpixelFeatureSet& feats_b,
                                   const SuperpixelFeatureSet& feats_a,
                                   std::span<const int> boundary_b) {
  check_pair(feats_b, feats_a);
  const auto border = boundary_flags(feats_b.count, boundary_b);
  std::vector<double> out(feats_b.count, 0.0);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < feats_b.count; ++j) {
    if (border[j]) continue;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < feats_a.count; ++i) best = std::min(best, feature_distance(feats_b[j], feats_a[i]));
    out[j] = best;
  }
  return out;
}

NeighborhoodGraph build_neighborhood_graph(int a_i, int b_j,
                                           const SuperpixelFeatureSet& feats_a,
                                           const SuperpixelFeatureSet& feats_b,
                                           const std::vector<std::vector<int>>& adjacency_a,
                                           const std::vector<std::vector<int>>& adjacency_b) {
  require(a_i >= 0 && a_i < feats_a.count && a_i < static_cast<int>(adjacency_a.size()),
          "neighborhood graph: unknown after-image label");
  require(b_j >= 0 && b_j < feats_b.count && b_j < static_cast<int>(adjacency_b.size()),
          "neighborhood graph: unknown before-image label");
  require(feats_a.depth == feats_b.depth, "neighborhood graph: feature dimensionality mismatch");

  NeighborhoodGraph g;
  g.side_a.push_back(a_i);
  g.side_a.insert(g.side_a.end(), adjacency_a[a_i].begin(), adjacency_a[a_i].end());
  g.side_b.push_back(b_j);
  g.side_b.insert(g.side_b.end(), adjacency_b[b_j].begin(), adjacency_b[b_j].end());
  const int p = static_cast<int>(g.side_a.size()), q = static_cast<int>(g.side_b.size());
  g.weights = CostMatrix(p, q);
  for (int r = 0; r < p; ++r) {
    require(g.side_a[r] < feats_a.count, "neighborhood graph: adjacency names an unknown label");
    for (int c = 0; c < q; ++c) {
      require(g.side_b[c] < feats_b.count, "neighborhood graph: adjacency names an unknown label");
      g.weights(r, c) = feature_distance(feats_a[g.side_a[r]], feats_b[g.side_b[c]]);
    }
  }
  g.cardinality_norm = std::min(p, q);
  return g;
}

std::vector<double> neighborhood_contrast(const SuperpixelFeatureSet& feats_b,
                                          const SuperpixelFeatureSet& feats_a,
                                          const std::vector<std::vector<int>>& adjacency_b,
                                          const std::vector<std::vector<int>>& adjacency_a,
                                          std::span<const int> boundary_b) {
  check_pair(feats_b, feats_a);
  require(adjacency_a.size() == static_cast<std::size_t>(feats_a.count) &&
              adjacency_b.size() == static_cast<std::size_t>(feats_b.count),
          "contrast: adjacency does not match feature set");
  const int nb = feats_b.count, na = feats_a.count;
  const auto border = boundary_flags(nb, boundary_b);

  // All cross distances once; every neighborhood graph is a submatrix.
  std::vector<double> dist(static_cast<std::size_t>(na) * nb);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      dist[static_cast<std::size_t>(i) * nb + j] = feature_distance(feats_a[i], feats_b[j]);

  std::vector<double> out(nb, 0.0);
#pragma omp parallel
  {
    LapWorkspace ws;
    std::vector<double> weights;
    std::vector<int> side_a, side_b;
#pragma omp for schedule(dynamic, 4)
    for (int j = 0; j < nb; ++j) {
      if (border[j]) continue;
      side_b.assign(1, j);
      side_b.insert(side_b.end(), adjacency_b[j].begin(), adjacency_b[j].end());
      const int q = static_cast<int>(side_b.size());
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < na; ++i) {
        side_a.assign(1, i);
        side_a.insert(side_a.end(), adjacency_a[i].begin(), adjacency_a[i].end());
        const int p = static_cast<int>(side_a.size());
        weights.resize(static_cast<std::size_t>(p) * q);
        for (int r = 0; r < p; ++r) {
          const double* row = &dist[static_cast<std::size_t>(side_a[r]) * nb];
          for (int c = 0; c < q; ++c) weights[static_cast<std::size_t>(r) * q + c] = row[side_b[c]];
        }
        const double normalized = ws.min_cost(weights, p, q) / std::min(p, q);
        best = std::min(best, normalized);
      }
      out[j] = best;
    }
  }
  return out;
}

ContrastMap combine_contrast(std::span<const double> local, std::span<const double> neigh,
                             const SuperpixelLabeling& labeling_b) {
  const auto n = static_cast<std::size_t>(labeling_b.count);
  require(local.size() == n && neigh.size() == n, "combine_contrast: vector length mismatch");
  double peak = 0.0;
  for (std::size_t l = 0; l < n; ++l) peak = std::max(peak, local[l] + neigh[l]);

  ContrastMap map{Grid<double>(labeling_b.height, labeling_b.width),
                  Grid<double>(labeling_b.height, labeling_b.width),
                  Grid<double>(labeling_b.height, labeling_b.width)};
  for (std::size_t k = 0; k < labeling_b.labels.size(); ++k) {
    const auto l = static_cast<std::size_t>(labeling_b.labels[k]);
    map.local.values[k] = local[l];
    map.neigh.values[k] = neigh[l];
    map.values.values[k] = peak > 0 ? (local[l] + neigh[l]) / peak : 0.0;
  }
  return map;
}

ContrastVectors contrast_vectors(const SuperpixelFeatureSet& feats_b,
                                 const SuperpixelFeatureSet& feats_a,
                                 const SuperpixelLabeling& labeling_b,
                                 const SuperpixelLabeling& labeling_a) {
  require(feats_b.count == labeling_b.count && feats_a.count == labeling_a.count,
          "contrast: feature set does not match labeling");
  return {local_contrast(feats_b, feats_a, labeling_b.boundary),
          neighborhood_contrast(feats_b, feats_a, labeling_b.adjacency, labeling_a.adjacency,
                                labeling_b.boundary)};
}

ContrastMap compute_contrast(const SuperpixelFeatureSet& feats_b,
                             const SuperpixelFeatureSet& feats_a,
                             const SuperpixelLabeling& labeling_b,
                             const SuperpixelLabeling& labeling_a) {
  const auto v = contrast_vectors(feats_b, feats_a, labeling_b, labeling_a);
  return combine_contrast(v.local, v.neigh, labeling_b);
}

}  // namespace smo
