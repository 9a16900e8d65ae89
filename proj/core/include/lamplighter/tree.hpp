#pragma once

#include <span>
#include <vector>

#include "lamplighter/metric.hpp"

namespace lamplighter {

/// Rooted tree with positive edge weights.
///
/// Every non-root vertex v owns the edge (v, parent(v)); edges are named by
/// that child endpoint throughout the library. Construction validates the
/// parent links and precomputes depths, Euler-tour intervals and root
/// distances so that subtree tests and path queries are cheap.
class WeightedTree {
 public:
  /// `parent[root]` must be -1; `weight[v]` is the weight of the edge (v, parent[v])
  /// and is ignored for the root.
  WeightedTree(std::vector<int> parent, std::vector<double> weight);

  /// The graph must be a tree (n-1 edges, connected).
  static WeightedTree from_graph(const WeightedGraph& g, int root);

  int size() const noexcept { return static_cast<int>(parent_.size()); }
  int root() const noexcept { return root_; }
  int parent(int v) const { return parent_[v]; }
  double weight(int v) const { return weight_[v]; }
  int depth(int v) const { return depth_[v]; }
  double root_distance(int v) const { return root_dist_[v]; }
  std::span<const int> children(int v) const { return children_[v]; }

  /// True when `v` lies in the subtree rooted at `top` (inclusive).
  bool in_subtree(int v, int top) const { return tin_[top] <= tin_[v] && tout_[v] <= tout_[top]; }
  int lca(int a, int b) const;
  double distance(int a, int b) const;

  /// Vertices in Euler-tour (preorder) order.
  std::span<const int> preorder() const noexcept { return order_; }

  MetricSpace to_metric() const;
  WeightedGraph to_graph() const;

 private:
  std::vector<int> parent_;
  std::vector<double> weight_;
  int root_ = 0;
  std::vector<std::vector<int>> children_;
  std::vector<int> depth_;
  std::vector<double> root_dist_;
  std::vector<int> tin_;
  std::vector<int> tout_;
  std::vector<int> order_;
};

}  // namespace lamplighter
