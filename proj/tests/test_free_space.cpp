#include <doctest.h>

#include "lamplighter/free_space.hpp"
#include "lamplighter/generators.hpp"
#include "oracles.hpp"

using namespace lamplighter;

namespace {

/// Random integer molecule with total positive mass at most `mass`.
std::vector<std::pair<int, int>> integer_molecule(Rng& rng, int n, int mass) {
  std::vector<std::pair<int, int>> mu;
  const int units = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(mass)));
  for (int i = 0; i < units; ++i) {
    mu.push_back({static_cast<int>(rng.below(n)), 1});
    mu.push_back({static_cast<int>(rng.below(n)), -1});
  }
  return mu;
}

Molecule to_molecule(const std::vector<std::pair<int, int>>& mu) {
  std::vector<Molecule::Entry> e;
  for (auto [p, c] : mu) e.push_back({p, static_cast<double>(c)});
  return Molecule(e);
}

}  // namespace

TEST_CASE("molecules") {
  CHECK_THROWS_AS(Molecule({{0, 1.0}, {1, -0.5}}), std::invalid_argument);
  const Molecule m({{2, 1.0}, {0, -1.0}, {2, 1.0}, {1, -1.0}});
  CHECK(m.at(2) == 2.0);
  CHECK(m.mass_l1() == 4.0);
  CHECK((m + m * -1.0).zero());
  CHECK(Molecule({{3, 1.0}, {3, -1.0}}).zero());
}

TEST_CASE("free-space norm by transport") {
  const MetricSpace p3 = shortest_path_metric(path_graph(3));
  const MetricSpace c6 = shortest_path_metric(cycle_graph(6));
  CHECK(lf_norm(c6, Molecule()) == 0.0);
  CHECK(lf_norm(c6, Molecule::dipole(1, 4)) == 3.0);
  CHECK(lf_norm(p3, Molecule({{0, 1.0}, {2, 1.0}, {1, -2.0}})) == 2.0);
}

TEST_CASE("transport solver matches the assignment oracle") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Rng rng(seed);
    const int n = 3 + static_cast<int>(rng.below(8));
    WeightedGraph base = random_graph(n, 0.4, seed);
    std::vector<Edge> edges(base.edges().begin(), base.edges().end());
    for (auto& e : edges) e.w = 0.5 * (1.0 + static_cast<double>(rng.below(12)));
    const MetricSpace m = shortest_path_metric(WeightedGraph(n, edges));
    const auto mu = integer_molecule(rng, n, 6);
    CHECK(lf_norm(m, to_molecule(mu)) == doctest::Approx(oracle::assignment_transport(m, mu)).epsilon(1e-12));
  }
}

TEST_CASE("free-space norm is a norm") {
  const MetricSpace m = shortest_path_metric(grid_graph({3, 4}));
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Molecule a = random_molecule(m.size(), 6, seed);
    const Molecule b = random_molecule(m.size(), 6, seed + 1000);
    CHECK(lf_norm(m, a + b) <= lf_norm(m, a) + lf_norm(m, b) + kTolerance);
    CHECK(lf_norm(m, a * -2.5) == doctest::Approx(2.5 * lf_norm(m, a)).epsilon(1e-12));
    CHECK(lf_norm(m, a) > 0.0);
  }
}

TEST_CASE("tree free space coordinates") {
  const WeightedTree p3 = WeightedTree::from_graph(path_graph(3), 0);
  const WeightedTree t({-1, 0, 0, 2}, {0, 2.5, 1, 4});
  const TreeFreeNorm dip = lf_norm_tree(t, Molecule::dipole(3, 2));
  CHECK(dip.value == 4.0);
  CHECK(dip.coordinates.size() == 1);
  const TreeFreeNorm r = lf_norm_tree(p3, Molecule({{0, 1.0}, {2, 1.0}, {1, -2.0}}));
  CHECK(r.coordinates.at(CoordKey::subtree(1)) == -1.0);
  CHECK(r.coordinates.at(CoordKey::subtree(2)) == 1.0);
  CHECK(r.value == 2.0);
}

TEST_CASE("tree free-space isometry agrees with transport on random trees") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Rng rng(seed);
    const int n = 2 + static_cast<int>(rng.below(9));
    const WeightedTree t = random_weighted_tree(n, seed);
    const Molecule mu = random_molecule(n, 6, seed);
    CHECK(lf_norm_tree(t, mu).value == doctest::Approx(lf_norm(t.to_metric(), mu)).epsilon(1e-12));
  }
}

TEST_CASE("lifting molecules") {
  const MetricSpace g = shortest_path_metric(grid_graph({3, 3}));
  const TreeEmbedding frt = frt_sample(g, 4);
  CHECK(lift_molecule(frt, Molecule()).zero());
  const Molecule d = lift_molecule(frt, Molecule::dipole(2, 7));
  CHECK(d.support().size() == 2);
  CHECK(d.at(frt.image(2)) == 1.0);
  CHECK(d.at(frt.image(7)) == -1.0);
  const StochasticEmbedding id = identity_tree_embedding(random_weighted_tree(5, 1));
  const Molecule mu({{0, 2.0}, {3, -1.5}, {4, -0.5}});
  const Molecule same = lift_molecule(id[0].embedding, mu);
  CHECK(same.support() == mu.support());
}

TEST_CASE("l1 image of the free space") {
  const MetricSpace c4 = shortest_path_metric(cycle_graph(4));
  const StochasticEmbedding k4 = karp_cycle_embedding(4);
  CHECK(lf_l1_embedding(k4, Molecule()).empty());
  for (int p = 0; p < 4; ++p)
    for (int q = p + 1; q < 4; ++q)
      CHECK(lf_l1_embedding(k4, Molecule::dipole(p, q)).l1_norm() == doctest::Approx(k4.expected_distance(p, q)));
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Molecule mu = random_molecule(4, 4, seed);
    const double norm = lf_norm(c4, mu);
    const double image = lf_l1_embedding(k4, mu).l1_norm();
    CHECK(image >= norm - kTolerance);
    CHECK(image <= 1.5 * norm + kTolerance);
  }
}

TEST_CASE("l1 image is linear") {
  const MetricSpace m = shortest_path_metric(random_graph(10, 0.3, 2));
  const StochasticEmbedding se = frt_ensemble(m, 10, 6);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Molecule a = random_molecule(10, 5, seed);
    const Molecule b = random_molecule(10, 5, seed + 77);
    SparseVector sum = lf_l1_embedding(se, a).scaled_by(3.0);
    sum.add(lf_l1_embedding(se, b), -0.5);
    CHECK(l1_distance(sum, lf_l1_embedding(se, a * 3.0 + b * -0.5)) <= 1e-9);
  }
}
