#include <doctest.h>

#include "lamplighter/generators.hpp"
#include "lamplighter/tree_embedding.hpp"
#include "oracles.hpp"

using namespace lamplighter;

namespace {

WeightedTree unit_path(int n) { return WeightedTree::from_graph(path_graph(n), 0); }

WeightedTree star(int leaves) {
  std::vector<int> parent(leaves + 1, 0);
  parent[0] = -1;
  return WeightedTree(parent, std::vector<double>(leaves + 1, 1.0));
}

}  // namespace

TEST_CASE("weighted tree structure") {
  const WeightedTree t({-1, 0, 0, 1, 1}, {0, 2, 3, 1, 5});
  CHECK(t.root() == 0);
  CHECK(t.lca(3, 4) == 1);
  CHECK(t.lca(3, 2) == 0);
  CHECK(t.distance(3, 2) == 6.0);
  CHECK(t.distance(4, 3) == 6.0);
  CHECK(t.in_subtree(4, 1));
  CHECK_FALSE(t.in_subtree(2, 1));
  CHECK(validate_metric(t.to_metric()).empty());
  CHECK_THROWS(WeightedTree({-1, -1}, {0, 1}));
  CHECK_THROWS(WeightedTree({1, 0}, {1, 1}));
  CHECK_THROWS(WeightedTree({-1, 0}, {0, 0}));
  CHECK_THROWS(WeightedTree::from_graph(cycle_graph(4), 0));
}

TEST_CASE("path and Steiner edge sets") {
  const WeightedTree p3 = unit_path(3);
  const WeightedTree p4 = unit_path(4);
  const WeightedTree s = star(2);
  CHECK(path_edges(p3, 1, 1).empty());
  CHECK(path_edges(p3, 0, 2) == EdgeSet{1, 2});
  CHECK(path_edges(s, 1, 2) == EdgeSet{1, 2});
  CHECK(steiner_edges(p4, 1, {}).empty());
  CHECK(steiner_edges(p4, 1, {1}).empty());
  CHECK(steiner_edges(p4, 1, {0, 3}) == EdgeSet{1, 2, 3});
}

TEST_CASE("path edges agree with parent walking") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const WeightedTree t = random_weighted_tree(12, seed);
    for (int x = 0; x < t.size(); ++x)
      for (int y = 0; y < t.size(); ++y) CHECK(path_edges(t, x, y) == oracle::walk_path(t, x, y));
  }
}

TEST_CASE("tree TSP closed form on small trees") {
  const WeightedTree p3 = unit_path(3);
  const WeightedTree p4 = unit_path(4);
  CHECK(tsp_tree(p4, 0, {}, 3) == 3.0);
  CHECK(tsp_tree(p3, 0, {2}, 0) == 4.0);
  CHECK(tsp_tree(p4, 0, {1, 3}, 2) == 4.0);
}

TEST_CASE("tree TSP closed form equals the exact solver on random weighted trees") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed ^ 0xabcdefULL);
    const int n = 2 + static_cast<int>(rng.below(11));
    const WeightedTree t = random_weighted_tree(n, seed);
    const MetricSpace m = t.to_metric();
    const PointSet a = oracle::random_subset(rng, n, 8);
    const int x = static_cast<int>(rng.below(n));
    const int y = static_cast<int>(rng.below(n));
    CHECK(tsp_tree(t, x, a, y) == doctest::Approx(tsp_exact({&m, x, a, y})).epsilon(1e-12));
  }
}

TEST_CASE("explicit embedding values") {
  const WeightedTree p3 = unit_path(3);
  CHECK(embed_ts_tree(p3, {{}, 0}).empty());
  const SparseVector g = embed_ts_tree(p3, {{2}, 0});
  CHECK(g.size() == 2);
  CHECK(g.at(CoordKey::tsp(1, {2})) == 1.0);
  CHECK(g.at(CoordKey::tsp(2, {2})) == 1.0);
  CHECK(l1_distance(g, embed_ts_tree(p3, {{}, 0})) == 2.0);
  const FBlockBounds b = f_block_bounds(p3, {{2}, 0}, {{}, 0});
  CHECK(b.lower == 2.0);
  CHECK(b.upper == 4.0);
  CHECK(l1_distance(embed_ts_tree(p3, {{}, 0}), embed_ts_tree(p3, {{}, 2})) == 2.0);
  CHECK(embed_ts_tree(p3, {{}, 2}).at(CoordKey::root_path(2)) == 1.0);
}

TEST_CASE("every travelling-salesman coordinate is a valid index") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const WeightedTree t = random_weighted_tree(10, seed);
    const LamplighterPoint p{oracle::random_subset(rng, 10, 6), static_cast<int>(rng.below(10))};
    const SparseVector f = ts_tree_f_block(t, p);
    for (const auto& [key, value] : f.entries()) {
      CHECK(key.kind == CoordKind::Tsp);
      CHECK(is_tsp_index(t, key.index, key.set));
      CHECK(value == t.weight(key.index));
    }
  }
  // An edge between two lamps is not a valid index for that set.
  CHECK_FALSE(is_tsp_index(unit_path(3), 1, {0, 2}));
}

TEST_CASE("f block is sandwiched and g has distortion at most 6 on random weighted trees") {
  std::size_t sandwich_fail = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed + 77);
    const int n = 2 + static_cast<int>(rng.below(9));
    const WeightedTree base = random_weighted_tree(n, seed);
    for (int root : {base.root(), static_cast<int>(rng.below(n))}) {
      const WeightedTree t = WeightedTree::from_graph(base.to_graph(), root);
      DistortionAccumulator acc;
      for (int k = 0; k < 150; ++k) {
        const LamplighterPoint u{oracle::random_subset(rng, n, 4), static_cast<int>(rng.below(n))};
        const LamplighterPoint v{oracle::random_subset(rng, n, 4), static_cast<int>(rng.below(n))};
        const double f = l1_distance(ts_tree_f_block(t, u), ts_tree_f_block(t, v));
        const FBlockBounds b = f_block_bounds(t, u, v);
        if (f < b.lower - kTolerance || f > b.upper + kTolerance) ++sandwich_fail;
        const double tt = tau_tree(t, u, v);
        const double g = l1_distance(embed_ts_tree(t, u), embed_ts_tree(t, v));
        if (g < tt / 2.0 - kTolerance || g > 3.0 * tt + kTolerance) ++sandwich_fail;
        if (tt > 0.0) acc.add({0, 0}, tt, g);
      }
      if (!acc.empty()) worst = std::max(worst, acc.report().distortion);
    }
  }
  CHECK(sandwich_fail == 0);
  CHECK(worst <= 6.0 + 1e-6);
  CHECK(worst > 1.0);
}
