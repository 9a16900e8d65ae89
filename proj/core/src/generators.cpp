#include "lamplighter/generators.hpp"

#include <array>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

#include "lamplighter/rng.hpp"

namespace lamplighter {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 9> kFamilyNames{{
    {Family::Path, "path"},
    {Family::Cycle, "cycle"},
    {Family::Grid, "grid"},
    {Family::Torus, "torus"},
    {Family::Diamond, "diamond"},
    {Family::RandomTree, "random_tree"},
    {Family::RandomGraph, "random_graph"},
    {Family::Complete, "complete"},
    {Family::File, "file"},
}};

WeightedGraph lattice_graph(const std::vector<int>& sides, bool wrap) {
  if (sides.empty()) throw std::invalid_argument("grid needs at least one dimension");
  int total = 1;
  for (int s : sides) {
    if (s < 1) throw std::invalid_argument("grid side must be positive");
    total *= s;
  }
  std::vector<Edge> edges;
  for (int v = 0; v < total; ++v) {
    int stride = 1;
    int rest = v;
    for (int s : sides) {
      const int coord = rest % s;
      rest /= s;
      if (coord + 1 < s) {
        edges.push_back({v, v + stride, 1.0});
      } else if (wrap && s > 2) {
        edges.push_back({v, v - coord * stride, 1.0});
      }
      stride *= s;
    }
  }
  return WeightedGraph(total, std::move(edges));
}

std::vector<std::pair<int, int>> random_tree_edges(int n, Rng& rng) {
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  rng.shuffle(std::span<int>(label));
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
    edges.emplace_back(label[i], label[j]);
  }
  return edges;
}

}  // namespace

std::string_view to_string(Family f) {
  for (auto [fam, name] : kFamilyNames) {
    if (fam == f) return name;
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (auto [fam, n] : kFamilyNames) {
    if (n == name) return fam;
  }
  throw std::invalid_argument("unknown graph family: " + std::string(name));
}

bool is_tree_family(Family f) { return f == Family::Path || f == Family::RandomTree; }

WeightedGraph path_graph(int n) {
  if (n < 1) throw std::invalid_argument("path needs n >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph grid_graph(const std::vector<int>& sides) { return lattice_graph(sides, false); }
WeightedGraph torus_graph(const std::vector<int>& sides) { return lattice_graph(sides, true); }

WeightedGraph diamond_graph(int level) {
  if (level < 0 || level > 5) throw std::invalid_argument("diamond level must be in 0..5");
  int n = 2;
  std::vector<std::pair<int, int>> edges{{0, 1}};
  for (int step = 0; step < level; ++step) {
    std::vector<std::pair<int, int>> next;
    next.reserve(edges.size() * 4);
    for (auto [u, v] : edges) {
      const int a = n++;
      const int b = n++;
      next.insert(next.end(), {{u, a}, {a, v}, {v, b}, {b, u}});
    }
    edges = std::move(next);
  }
  std::vector<Edge> out;
  for (auto [u, v] : edges) out.push_back({u, v, 1.0});
  return WeightedGraph(n, std::move(out));
}

WeightedGraph complete_graph(int n) {
  if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  }
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph random_tree_graph(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random tree needs n >= 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (auto [u, v] : random_tree_edges(n, rng)) edges.push_back({u, v, 1.0});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph random_graph(int n, double extra_p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random graph needs n >= 1");
  Rng rng(seed);
  std::set<std::pair<int, int>> present;
  std::vector<Edge> edges;
  for (auto [u, v] : random_tree_edges(n, rng)) {
    present.emplace(std::min(u, v), std::max(u, v));
    edges.push_back({u, v, 1.0});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!present.count({i, j}) && rng.coin(extra_p)) edges.push_back({i, j, 1.0});
    }
  }
  return WeightedGraph(n, std::move(edges));
}

WeightedTree random_weighted_tree(int n, std::uint64_t seed, int max_weight) {
  if (n < 1) throw std::invalid_argument("random tree needs n >= 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (auto [u, v] : random_tree_edges(n, rng)) {
    edges.push_back({u, v, 1.0 + static_cast<double>(rng.below(static_cast<std::uint64_t>(max_weight)))});
  }
  const int root = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  return WeightedTree::from_graph(WeightedGraph(n, std::move(edges)), root);
}

WeightedGraph generate(Family family, const FamilyParams& p, std::uint64_t seed) {
  switch (family) {
    case Family::Path:
      return path_graph(p.n);
    case Family::Cycle:
      return cycle_graph(p.n);
    case Family::Grid:
    case Family::Torus: {
      if (p.d < 1 || p.d > 6) throw std::invalid_argument("grid dimension must be in 1..6");
      std::vector<int> sides(p.d, p.n);
      if (p.m > 0) {
        if (p.d != 2) throw std::invalid_argument("a second grid side needs d = 2");
        sides[1] = p.m;
      }
      return family == Family::Grid ? grid_graph(sides) : torus_graph(sides);
    }
    case Family::Diamond:
      return diamond_graph(p.k);
    case Family::RandomTree:
      return random_tree_graph(p.n, seed);
    case Family::RandomGraph:
      return random_graph(p.n, p.n > 1 ? 3.0 / p.n : 0.0, seed);
    case Family::Complete:
      return complete_graph(p.n);
    case Family::File:
      return read_graph_file(p.file);
  }
  throw std::invalid_argument("unknown graph family");
}

WeightedGraph parse_graph(std::istream& in) {
  long long n = 0;
  long long m = 0;
  if (!(in >> n >> m) || n < 1 || m < 0) throw std::invalid_argument("graph file: bad header, expected 'n m'");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    Edge e;
    if (!(in >> e.u >> e.v >> e.w)) {
      throw std::invalid_argument("graph file: edge line " + std::to_string(i + 1) + " is malformed");
    }
    edges.push_back(e);
  }
  return WeightedGraph(static_cast<int>(n), std::move(edges));
}

WeightedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  return parse_graph(in);
}

}  // namespace lamplighter
