#include "smo/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smo::reference {

std::vector<double> local_contrast(const SuperpixelFeatureSet& feats_b,
                                   const SuperpixelFeatureSet& feats_a,
                                   const SuperpixelLabeling& labeling_b) {
  std::vector<double> out(feats_b.count, 0.0);
  for (int j = 0; j < feats_b.count; ++j) {
    if (labeling_b.on_boundary[j]) continue;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < feats_a.count; ++i) {
      double acc = 0.0;
      for (int d = 0; d < feats_b.depth; ++d) {
        const double diff = feats_b[j][d] - feats_a[i][d];
        acc += diff * diff;
      }
      best = std::min(best, std::sqrt(acc));
    }
    out[j] = best;
  }
  return out;
}

std::vector<double> neighborhood_contrast(const SuperpixelFeatureSet& feats_b,
                                          const SuperpixelFeatureSet& feats_a,
                                          const SuperpixelLabeling& labeling_b,
                                          const SuperpixelLabeling& labeling_a,
                                          const LapSolver& solver) {
  std::vector<double> out(feats_b.count, 0.0);
  for (int j = 0; j < feats_b.count; ++j) {
    if (labeling_b.on_boundary[j]) continue;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < feats_a.count; ++i) {
      const NeighborhoodGraph g = build_neighborhood_graph(i, j, feats_a, feats_b,
                                                           labeling_a.adjacency, labeling_b.adjacency);
      best = std::min(best, solver(g.weights).total_cost / g.cardinality_norm);
    }
    out[j] = best;
  }
  return out;
}

ContrastMap compute_contrast(const SuperpixelFeatureSet& feats_b,
                             const SuperpixelFeatureSet& feats_a,
                             const SuperpixelLabeling& labeling_b,
                             const SuperpixelLabeling& labeling_a, const LapSolver& solver) {
  const auto local = local_contrast(feats_b, feats_a, labeling_b);
  const auto neigh = neighborhood_contrast(feats_b, feats_a, labeling_b, labeling_a, solver);
  return combine_contrast(local, neigh, labeling_b);
}

}  // namespace smo::reference
