#include <doctest.h>

#include <omp.h>

#include <random>

#include "../support/fixtures.hpp"
#include "smo/contrast.hpp"
#include "smo/reference.hpp"
#include "smo/slic.hpp"

using namespace smo;

namespace {

SuperpixelFeatureSet feature_set(int depth, std::vector<double> values) {
  const int count = static_cast<int>(values.size()) / depth;
  return {count, depth, std::move(values)};
}

SuperpixelFeatureSet random_set(int count, int depth, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SuperpixelFeatureSet s{count, depth, std::vector<double>(static_cast<std::size_t>(count) * depth)};
  for (double& v : s.vectors) v = u(rng);
  return s;
}

SuperpixelFeatureSet permuted(const SuperpixelFeatureSet& s, const std::vector<int>& perm) {
  SuperpixelFeatureSet out = s;
  for (int l = 0; l < s.count; ++l)
    std::copy(s[l].begin(), s[l].end(), out[perm[l]].begin());
  return out;
}

// A before/after pair of labelings with neighborhoods small enough for
// exhaustive matching.
struct SmallPair {
  SuperpixelLabeling b, a;
};

SmallPair small_pair(int trial) {
  const int sizes[][2] = {{3, 3}, {4, 4}, {3, 5}, {4, 3}, {5, 4}};
  const auto& sb = sizes[trial % 5];
  const auto& sa = sizes[(trial + 2) % 5];
  return {fixture::grid_labeling(30, 40, sb[0], sb[1]), fixture::grid_labeling(30, 40, sa[0], sa[1])};
}

}  // namespace

TEST_CASE("local_contrast") {
  SUBCASE("identical feature sets give zero") {
    std::mt19937_64 rng(1);
    const auto f = random_set(9, 4, rng);
    for (double c : local_contrast(f, f, std::vector<int>{})) CHECK(c == 0.0);
  }
  SUBCASE("nearest after-image vector") {
    const auto fb = feature_set(2, {1, 0});
    const auto fa = feature_set(2, {0, 0, 3, 0});
    CHECK(local_contrast(fb, fa, std::vector<int>{}) == std::vector<double>{1.0});
  }
  SUBCASE("border superpixels are zeroed") {
    std::mt19937_64 rng(2);
    const auto fb = random_set(9, 3, rng), fa = random_set(9, 3, rng);
    const std::vector<int> border{0, 1, 2, 3, 5, 6, 7, 8};
    const auto c = local_contrast(fb, fa, border);
    for (int j : border) CHECK(c[j] == 0.0);
    CHECK(c[4] > 0.0);
  }
  SUBCASE("dimension mismatch and empty A") {
    const auto fb = feature_set(2, {1, 0});
    CHECK_THROWS_AS(local_contrast(fb, feature_set(3, {0, 0, 0}), std::vector<int>{}), InputError);
    CHECK_THROWS_AS(local_contrast(fb, SuperpixelFeatureSet{0, 2, {}}, std::vector<int>{}), InputError);
  }
}

TEST_CASE("build_neighborhood_graph") {
  SUBCASE("three and two neighbors give a 4x3 graph") {
    std::mt19937_64 rng(3);
    const auto fa = random_set(12, 2, rng), fb = random_set(31, 2, rng);
    std::vector<std::vector<int>> adj_a(12), adj_b(31);
    adj_a[7] = {4, 5, 10};
    adj_b[29] = {28, 30};
    const auto g = build_neighborhood_graph(7, 29, fa, fb, adj_a, adj_b);
    CHECK(g.side_a == std::vector<int>{7, 4, 5, 10});
    CHECK(g.side_b == std::vector<int>{29, 28, 30});
    CHECK(g.weights.rows == 4);
    CHECK(g.weights.cols == 3);
    CHECK(g.cardinality_norm == 3);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 3; ++c)
        CHECK(g.weights(r, c) == feature_distance(fa[g.side_a[r]], fb[g.side_b[c]]));
  }
  SUBCASE("isolated superpixels give a 1x1 graph") {
    const auto fa = feature_set(1, {2}), fb = feature_set(1, {5});
    const std::vector<std::vector<int>> none(1);
    const auto g = build_neighborhood_graph(0, 0, fa, fb, none, none);
    CHECK(g.weights.rows == 1);
    CHECK(g.weights.cols == 1);
    CHECK(g.cardinality_norm == 1);
    CHECK(g.weights(0, 0) == 3.0);
  }
  SUBCASE("identical features give zero weights") {
    const auto f = feature_set(2, {1, 1, 1, 1, 1, 1});
    const std::vector<std::vector<int>> adj{{1, 2}, {0}, {0}};
    const auto g = build_neighborhood_graph(0, 0, f, f, adj, adj);
    for (double w : g.weights.costs) CHECK(w == 0.0);
  }
  SUBCASE("unknown label") {
    const auto f = feature_set(1, {0, 1});
    const std::vector<std::vector<int>> adj{{1}, {0}};
    CHECK_THROWS_AS(build_neighborhood_graph(2, 0, f, f, adj, adj), InputError);
    CHECK_THROWS_AS(build_neighborhood_graph(0, -1, f, f, adj, adj), InputError);
  }
}

TEST_CASE("neighborhood_contrast") {
  SUBCASE("two-by-two graph in one dimension") {
    const auto fa = feature_set(1, {0, 2}), fb = feature_set(1, {1, 3});
    const std::vector<std::vector<int>> adj{{1}, {0}};
    const auto c = neighborhood_contrast(fb, fa, adj, adj, std::vector<int>{});
    CHECK(c == std::vector<double>{1.0, 1.0});
  }
  SUBCASE("identical images give zero") {
    std::mt19937_64 rng(4);
    const auto lab = fixture::grid_labeling(20, 20, 4, 4);
    const auto f = random_set(16, 3, rng);
    for (double c : neighborhood_contrast(f, f, lab.adjacency, lab.adjacency, lab.boundary)) CHECK(c == 0.0);
  }
  SUBCASE("matches a direct implementation with exhaustive matching") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
      const auto [lb, la] = small_pair(trial);
      const auto fb = random_set(lb.count, 3, rng), fa = random_set(la.count, 3, rng);
      const auto fast = neighborhood_contrast(fb, fa, lb.adjacency, la.adjacency, lb.boundary);
      const auto slow = reference::neighborhood_contrast(fb, fa, lb, la, brute_force_lap);
      REQUIRE(fast.size() == slow.size());
      for (std::size_t j = 0; j < fast.size(); ++j) CHECK(fast[j] == doctest::Approx(slow[j]).epsilon(1e-12));
    }
  }
  SUBCASE("matches the serial reference on slic labelings") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 5; ++trial) {
      const auto lb = segment_slic(fixture::blocky_image(48, 48, 6, 10 + trial), {30, 10.0, 10, 0.25});
      const auto la = segment_slic(fixture::blocky_image(48, 48, 6, 20 + trial), {30, 10.0, 10, 0.25});
      const auto fb = random_set(lb.count, 5, rng), fa = random_set(la.count, 5, rng);
      const auto fast = neighborhood_contrast(fb, fa, lb.adjacency, la.adjacency, lb.boundary);
      const auto slow = reference::neighborhood_contrast(fb, fa, lb, la, solve_lap);
      for (std::size_t j = 0; j < fast.size(); ++j) CHECK(fast[j] == doctest::Approx(slow[j]).epsilon(1e-12));
    }
  }
  SUBCASE("border superpixels are zeroed") {
    std::mt19937_64 rng(7);
    const auto lab = fixture::grid_labeling(20, 20, 3, 3);
    const auto fb = random_set(9, 2, rng), fa = random_set(9, 2, rng);
    const auto c = neighborhood_contrast(fb, fa, lab.adjacency, lab.adjacency, lab.boundary);
    for (int j : lab.boundary) CHECK(c[j] == 0.0);
    CHECK(c[4] > 0.0);
  }
}

TEST_CASE("combine_contrast") {
  const auto lab = fixture::grid_labeling(2, 4, 1, 2);
  SUBCASE("hand evaluation") {
    const auto m = combine_contrast(std::vector<double>{1, 3}, std::vector<double>{1, 1}, lab);
    CHECK(m.values.values == std::vector<double>{0.5, 0.5, 1.0, 1.0, 0.5, 0.5, 1.0, 1.0});
    CHECK(m.local.values == std::vector<double>{1, 1, 3, 3, 1, 1, 3, 3});
    CHECK(m.neigh.values == std::vector<double>(8, 1.0));
  }
  SUBCASE("zero input gives a zero map") {
    const auto m = combine_contrast(std::vector<double>{0, 0}, std::vector<double>{0, 0}, lab);
    CHECK(m.values.values == std::vector<double>(8, 0.0));
  }
  SUBCASE("nonzero input peaks at exactly one") {
    const auto m = combine_contrast(std::vector<double>{0.3, 0.01}, std::vector<double>{0.2, 0}, lab);
    CHECK(*std::max_element(m.values.values.begin(), m.values.values.end()) == 1.0);
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(combine_contrast(std::vector<double>{1}, std::vector<double>{1, 1}, lab), InputError);
  }
}

TEST_CASE("contrast map invariants") {
  std::mt19937_64 rng(8);
  const auto lb = segment_slic(fixture::blocky_image(48, 56, 7, 31), {36, 10.0, 10, 0.25});
  const auto la = segment_slic(fixture::blocky_image(48, 56, 7, 32), {36, 10.0, 10, 0.25});
  const auto fb = random_set(lb.count, 4, rng), fa = random_set(la.count, 4, rng);
  const auto base = compute_contrast(fb, fa, lb, la);

  SUBCASE("range and border zeroing") {
    double hi = 0;
    for (double v : base.values.values) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      hi = std::max(hi, v);
    }
    CHECK(hi == 1.0);
    for (int j : lb.boundary)
      for (auto k : lb.pixels(j)) CHECK(base.values.values[k] == 0.0);
  }
  SUBCASE("feature scale") {
    for (double s : {0.1, 7.3}) {
      auto fb2 = fb, fa2 = fa;
      for (double& v : fb2.vectors) v *= s;
      for (double& v : fa2.vectors) v *= s;
      const auto m = compute_contrast(fb2, fa2, lb, la);
      for (std::size_t k = 0; k < m.values.size(); ++k)
        CHECK(m.values.values[k] == doctest::Approx(base.values.values[k]).epsilon(1e-12));
    }
  }
  SUBCASE("label permutation") {
    const auto pb = fixture::random_permutation(lb.count, rng);
    const auto pa = fixture::random_permutation(la.count, rng);
    const auto m = compute_contrast(permuted(fb, pb), permuted(fa, pa), permute_labels(lb, pb), permute_labels(la, pa));
    for (std::size_t k = 0; k < m.values.size(); ++k)
      CHECK(m.values.values[k] == doctest::Approx(base.values.values[k]).epsilon(1e-12));
  }
  SUBCASE("identity pair") {
    const auto m = compute_contrast(fb, fb, lb, lb);
    for (double v : m.values.values) CHECK(v == 0.0);
  }
  SUBCASE("agrees with the serial reference") {
    const auto ref = reference::compute_contrast(fb, fa, lb, la, solve_lap);
    for (std::size_t k = 0; k < ref.values.size(); ++k)
      CHECK(ref.values.values[k] == doctest::Approx(base.values.values[k]).epsilon(1e-12));
  }
  SUBCASE("thread count does not change the result") {
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto one = compute_contrast(fb, fa, lb, la);
    omp_set_num_threads(4);
    const auto four = compute_contrast(fb, fa, lb, la);
    omp_set_num_threads(saved);
    CHECK(one.values == four.values);
    CHECK(one.values == base.values);
  }
}
