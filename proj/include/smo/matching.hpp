#pragma once

#include <span>
#include <utility>
#include <vector>

namespace smo {

/// p x q matrix of finite, nonnegative edge weights, row-major.
struct CostMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> costs;

  CostMatrix() = default;
  CostMatrix(int p, int q, double fill = 0.0)
      : rows(p), cols(q), costs(static_cast<std::size_t>(p) * q, fill) {}
  CostMatrix(int p, int q, std::vector<double> values);

  double& operator()(int r, int c) { return costs[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return costs[static_cast<std::size_t>(r) * cols + c]; }

  CostMatrix transposed() const;
  void validate() const;
};

struct MatchingSolution {
  std::vector<std::pair<int, int>> pairs;  // (row, col), sorted by row
  double total_cost = 0.0;
  bool is_optimal = false;
};

/// Minimum-cost maximum matching on the complete bipartite graph K_{p,q}.
///
/// Shortest augmenting path with dual potentials (Jonker-Volgenant family),
/// run over the smaller side so rectangular inputs need no padding. Exact;
/// O(min(p,q)^2 * max(p,q)). Any optimal matching may be returned when the
/// argmin is not unique; total_cost is the same either way.
MatchingSolution solve_lap(const CostMatrix& costs);

/// Reusable buffers for repeated solves on small matrices. Only the optimal
/// cost is produced; nothing is allocated once the buffers have grown.
class LapWorkspace {
 public:
  /// `costs` is row-major rows x cols. Returns the optimal matching cost.
  double min_cost(std::span<const double> costs, int rows, int cols);

 private:
  double solve(std::span<const double> costs, int rows, int cols, bool transpose);

  std::vector<double> u_, v_, shortest_;
  std::vector<int> path_, col4row_, row4col_, remaining_;
  std::vector<char> seen_row_, seen_col_;

  friend MatchingSolution solve_lap(const CostMatrix& costs);
};

/// Exhaustive search over every maximum matching by dynamic programming on
/// subsets of the larger side. Test oracle only; rejects max(p,q) > 16.
MatchingSolution brute_force_lap(const CostMatrix& costs);

inline constexpr int kBruteForceLimit = 16;

}  // namespace smo
