#pragma once

// Serial, direct implementations kept as test oracles and benchmark
// baselines for the parallel kernels.

#include <functional>
#include <vector>

#include "smo/contrast.hpp"
#include "smo/matching.hpp"

namespace smo::reference {

using LapSolver = std::function<MatchingSolution(const CostMatrix&)>;

/// Builds every G_{a_i,b_j} explicitly and solves it with `solver`.
std::vector<double> neighborhood_contrast(const SuperpixelFeatureSet& feats_b,
                                          const SuperpixelFeatureSet& feats_a,
                                          const SuperpixelLabeling& labeling_b,
                                          const SuperpixelLabeling& labeling_a,
                                          const LapSolver& solver);

std::vector<double> local_contrast(const SuperpixelFeatureSet& feats_b,
                                   const SuperpixelFeatureSet& feats_a,
                                   const SuperpixelLabeling& labeling_b);

ContrastMap compute_contrast(const SuperpixelFeatureSet& feats_b,
                             const SuperpixelFeatureSet& feats_a,
                             const SuperpixelLabeling& labeling_b,
                             const SuperpixelLabeling& labeling_a, const LapSolver& solver);

}  // namespace smo::reference
