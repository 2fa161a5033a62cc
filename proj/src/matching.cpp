#include "smo/matching.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <limits>

#include "smo/grid.hpp"

namespace smo {

CostMatrix::CostMatrix(int p, int q, std::vector<double> values)
    : rows(p), cols(q), costs(std::move(values)) {
  require(costs.size() == static_cast<std::size_t>(p) * q, "cost matrix: size mismatch");
}

CostMatrix CostMatrix::transposed() const {
  CostMatrix t(cols, rows);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) t(c, r) = (*this)(r, c);
  return t;
}

void CostMatrix::validate() const {
  require(rows > 0 && cols > 0, "cost matrix: empty");
  require(costs.size() == static_cast<std::size_t>(rows) * cols, "cost matrix: size mismatch");
  for (double c : costs) require(std::isfinite(c) && c >= 0, "cost matrix: entries must be finite and >= 0");
}

double LapWorkspace::min_cost(std::span<const double> costs, int rows, int cols) {
  return solve(costs, rows, cols, rows > cols);
}

// Rows of the working problem are the smaller side; `transpose` flips the
// indexing so that (i, j) reads costs[j * cols + i].
double LapWorkspace::solve(std::span<const double> costs, int rows, int cols, bool transpose) {
  const int n = transpose ? cols : rows;
  const int m = transpose ? rows : cols;
  auto cost = [&](int i, int j) {
    return transpose ? costs[static_cast<std::size_t>(j) * cols + i]
                     : costs[static_cast<std::size_t>(i) * cols + j];
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();

  u_.assign(n, 0.0);
  v_.assign(m, 0.0);
  col4row_.assign(n, -1);
  row4col_.assign(m, -1);
  shortest_.resize(m);
  path_.resize(m);
  remaining_.resize(m);
  seen_row_.resize(n);
  seen_col_.resize(m);

  for (int cur = 0; cur < n; ++cur) {
    std::fill(shortest_.begin(), shortest_.end(), kInf);
    std::fill(path_.begin(), path_.end(), -1);
    std::fill(seen_row_.begin(), seen_row_.end(), 0);
    std::fill(seen_col_.begin(), seen_col_.end(), 0);
    int num_remaining = m;
    for (int k = 0; k < m; ++k) remaining_[k] = m - k - 1;

    double min_val = 0.0;
    int i = cur;
    int sink = -1;
    while (sink < 0) {
      seen_row_[i] = 1;
      int index = -1;
      double lowest = kInf;
      for (int k = 0; k < num_remaining; ++k) {
        const int j = remaining_[k];
        const double r = min_val + cost(i, j) - u_[i] - v_[j];
        if (r < shortest_[j]) {
          path_[j] = i;
          shortest_[j] = r;
        }
        // Prefer an unassigned column on ties: it ends the search sooner.
        if (shortest_[j] < lowest || (shortest_[j] == lowest && row4col_[j] < 0)) {
          lowest = shortest_[j];
          index = k;
        }
      }
      min_val = lowest;
      const int j = remaining_[index];
      if (row4col_[j] < 0)
        sink = j;
      else
        i = row4col_[j];
      seen_col_[j] = 1;
      remaining_[index] = remaining_[--num_remaining];
    }

    u_[cur] += min_val;
    for (int r = 0; r < n; ++r)
      if (seen_row_[r] && r != cur) u_[r] += min_val - shortest_[col4row_[r]];
    for (int c = 0; c < m; ++c)
      if (seen_col_[c]) v_[c] -= min_val - shortest_[c];

    for (int j = sink;;) {
      const int r = path_[j];
      row4col_[j] = r;
      std::swap(col4row_[r], j);
      if (r == cur) break;
    }
  }

  double total = 0.0;
  for (int r = 0; r < n; ++r) total += cost(r, col4row_[r]);
  return total;
}

MatchingSolution solve_lap(const CostMatrix& costs) {
  costs.validate();
  LapWorkspace ws;
  const bool transpose = costs.rows > costs.cols;
  MatchingSolution out;
  out.total_cost = ws.solve(costs.costs, costs.rows, costs.cols, transpose);
  out.is_optimal = true;
  for (int r = 0; r < static_cast<int>(ws.col4row_.size()); ++r) {
    const int c = ws.col4row_[r];
    out.pairs.emplace_back(transpose ? c : r, transpose ? r : c);
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

MatchingSolution brute_force_lap(const CostMatrix& costs) {
  costs.validate();
  require(std::max(costs.rows, costs.cols) <= kBruteForceLimit,
          "brute_force_lap: matrix too large for exhaustive search");
  const bool transpose = costs.rows > costs.cols;
  const int n = transpose ? costs.cols : costs.rows;
  const int m = transpose ? costs.rows : costs.cols;
  auto w = [&](int r, int c) { return transpose ? costs(c, r) : costs(r, c); };

  // best[mask]: cheapest way to match rows 0..popcount(mask)-1 onto exactly
  // the columns in mask. Every matching is one path through this table.
  const std::size_t states = std::size_t{1} << m;
  std::vector<double> best(states, std::numeric_limits<double>::infinity());
  std::vector<std::int8_t> last(states, -1);
  best[0] = 0.0;
  for (std::size_t mask = 0; mask < states; ++mask) {
    const int row = std::popcount(mask);
    if (row >= n || best[mask] == std::numeric_limits<double>::infinity()) continue;
    for (int c = 0; c < m; ++c) {
      const std::size_t next = mask | (std::size_t{1} << c);
      if (next == mask) continue;
      const double cost = best[mask] + w(row, c);
      if (cost < best[next]) {
        best[next] = cost;
        last[next] = static_cast<std::int8_t>(c);
      }
    }
  }
  std::size_t final_mask = 0;
  double final_cost = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < states; ++mask)
    if (std::popcount(mask) == n && best[mask] < final_cost) {
      final_cost = best[mask];
      final_mask = mask;
    }

  MatchingSolution out;
  for (int row = n - 1; row >= 0; --row) {
    const int c = last[final_mask];
    out.pairs.emplace_back(transpose ? c : row, transpose ? row : c);
    final_mask &= ~(std::size_t{1} << c);
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  // Re-sum in row order so the reported cost does not depend on the search path.
  for (auto [r, c] : out.pairs) out.total_cost += costs(r, c);
  out.is_optimal = true;
  return out;
}

}  // namespace smo
