#include "lamplighter/tree.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lamplighter {

WeightedTree::WeightedTree(std::vector<int> parent, std::vector<double> weight)
    : parent_(std::move(parent)), weight_(std::move(weight)) {
  const int n = static_cast<int>(parent_.size());
  if (n < 1) throw std::invalid_argument("tree needs at least one vertex");
  if (weight_.size() != parent_.size()) throw std::invalid_argument("tree weight array has wrong size");
  root_ = -1;
  children_.assign(n, {});
  for (int v = 0; v < n; ++v) {
    if (parent_[v] == -1) {
      if (root_ != -1) throw std::invalid_argument("tree has more than one root");
      root_ = v;
      weight_[v] = 0.0;
      continue;
    }
    if (parent_[v] < 0 || parent_[v] >= n || parent_[v] == v) {
      throw std::invalid_argument("invalid parent for vertex " + std::to_string(v));
    }
    if (!(weight_[v] > 0.0) || !std::isfinite(weight_[v])) {
      throw std::invalid_argument("tree edge weight must be positive at vertex " + std::to_string(v));
    }
    children_[parent_[v]].push_back(v);
  }
  if (root_ == -1) throw std::invalid_argument("tree has no root");

  depth_.assign(n, 0);
  root_dist_.assign(n, 0.0);
  tin_.assign(n, -1);
  tout_.assign(n, -1);
  order_.reserve(n);
  // Iterative DFS; a vertex unreachable from the root means the parent links contain a cycle.
  std::vector<std::pair<int, std::size_t>> stack{{root_, 0}};
  int clock = 0;
  tin_[root_] = clock++;
  order_.push_back(root_);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < children_[v].size()) {
      int c = children_[v][next++];
      depth_[c] = depth_[v] + 1;
      root_dist_[c] = root_dist_[v] + weight_[c];
      tin_[c] = clock++;
      order_.push_back(c);
      stack.emplace_back(c, 0);
    } else {
      tout_[v] = clock - 1;
      stack.pop_back();
    }
  }
  if (static_cast<int>(order_.size()) != n) throw std::invalid_argument("parent links contain a cycle");
}

WeightedTree WeightedTree::from_graph(const WeightedGraph& g, int root) {
  const int n = g.size();
  if (static_cast<int>(g.edges().size()) != n - 1) throw std::invalid_argument("graph is not a tree");
  if (root < 0 || root >= n) throw std::out_of_range("tree root out of range");
  std::vector<int> parent(n, -2);
  std::vector<double> weight(n, 0.0);
  parent[root] = -1;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [u, w] : g.neighbours(v)) {
      if (parent[u] == -2) {
        parent[u] = v;
        weight[u] = w;
        stack.push_back(u);
      }
    }
  }
  return WeightedTree(std::move(parent), std::move(weight));
}

int WeightedTree::lca(int a, int b) const {
  while (depth_[a] > depth_[b]) a = parent_[a];
  while (depth_[b] > depth_[a]) b = parent_[b];
  while (a != b) {
    a = parent_[a];
    b = parent_[b];
  }
  return a;
}

double WeightedTree::distance(int a, int b) const {
  // Summing edges along the path (rather than differencing root distances) keeps results exact
  // for integer weights regardless of depth.
  double total = 0.0;
  while (depth_[a] > depth_[b]) {
    total += weight_[a];
    a = parent_[a];
  }
  while (depth_[b] > depth_[a]) {
    total += weight_[b];
    b = parent_[b];
  }
  while (a != b) {
    total += weight_[a] + weight_[b];
    a = parent_[a];
    b = parent_[b];
  }
  return total;
}

MetricSpace WeightedTree::to_metric() const {
  const int n = size();
  std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      double d = distance(a, b);
      flat[static_cast<std::size_t>(a) * n + b] = d;
      flat[static_cast<std::size_t>(b) * n + a] = d;
    }
  }
  return MetricSpace(n, std::move(flat));
}

WeightedGraph WeightedTree::to_graph() const {
  std::vector<Edge> edges;
  for (int v = 0; v < size(); ++v) {
    if (v != root_) edges.push_back({v, parent_[v], weight_[v]});
  }
  return WeightedGraph(size(), std::move(edges));
}

}  // namespace lamplighter
