#pragma once

#include <span>
#include <vector>

#include "smo/features.hpp"
#include "smo/grid.hpp"
#include "smo/matching.hpp"
#include "smo/slic.hpp"

namespace smo {

/// Complete bipartite graph between {a_i} + N(a_i) and {b_j} + N(b_j).
/// side_a[0] == a_i and side_b[0] == b_j; the neighbors follow in ascending
/// label order. weights(r, c) = ||f(side_a[r]) - f(side_b[c])||.
struct NeighborhoodGraph {
  std::vector<int> side_a;
  std::vector<int> side_b;
  CostMatrix weights;
  int cardinality_norm = 0;  // min(|side_a|, |side_b|)
};

/// Per-superpixel contrast of the before image; zero on border superpixels.
struct ContrastVectors {
  std::vector<double> local;
  std::vector<double> neigh;
};

struct ContrastMap {
  Grid<double> values;  // normalized to [0, 1]
  Grid<double> local;   // unnormalized per-pixel components
  Grid<double> neigh;
};

double feature_distance(std::span<const double> x, std::span<const double> y);

/// c_j = min_i ||f_j^b - f_i^a|| for j off the border, 0 on it. The minimum
/// runs over every after-image superpixel, border ones included.
std::vector<double> local_contrast(const SuperpixelFeatureSet& feats_b,
                                   const SuperpixelFeatureSet& feats_a,
                                   std::span<const int> boundary_b);

NeighborhoodGraph build_neighborhood_graph(int a_i, int b_j,
                                           const SuperpixelFeatureSet& feats_a,
                                           const SuperpixelFeatureSet& feats_b,
                                           const std::vector<std::vector<int>>& adjacency_a,
                                           const std::vector<std::vector<int>>& adjacency_b);

/// c_j = min_i Dmin(G_{a_i,b_j}) / l_{a_i,b_j} for j off the border, 0 on it.
///
/// Parallel over b_j; each b_j's minimum is reduced by one thread, so the
/// result does not depend on the thread count.
std::vector<double> neighborhood_contrast(const SuperpixelFeatureSet& feats_b,
                                          const SuperpixelFeatureSet& feats_a,
                                          const std::vector<std::vector<int>>& adjacency_b,
                                          const std::vector<std::vector<int>>& adjacency_a,
                                          std::span<const int> boundary_b);

/// Broadcasts local + neigh to pixels and divides by the maximum. An
/// all-zero sum gives an all-zero map.
ContrastMap combine_contrast(std::span<const double> local, std::span<const double> neigh,
                             const SuperpixelLabeling& labeling_b);

ContrastVectors contrast_vectors(const SuperpixelFeatureSet& feats_b,
                                 const SuperpixelFeatureSet& feats_a,
                                 const SuperpixelLabeling& labeling_b,
                                 const SuperpixelLabeling& labeling_a);

/// Local and neighborhood contrast followed by normalization.
ContrastMap compute_contrast(const SuperpixelFeatureSet& feats_b,
                             const SuperpixelFeatureSet& feats_a,
                             const SuperpixelLabeling& labeling_b,
                             const SuperpixelLabeling& labeling_a);

}  // namespace smo
