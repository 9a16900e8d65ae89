#pragma once

#include <vector>

#include "lamplighter/sparse_vector.hpp"
#include "lamplighter/tree.hpp"
#include "lamplighter/tsp.hpp"

namespace lamplighter {

/// Sorted list of tree edges, each named by its child endpoint.
using EdgeSet = std::vector<int>;

/// Edges of the unique path between x and y.
EdgeSet path_edges(const WeightedTree& t, int x, int y);

/// Union of path_edges(x, a) over a in `targets`.
EdgeSet steiner_edges(const WeightedTree& t, int x, const PointSet& targets);

double total_weight(const WeightedTree& t, const EdgeSet& edges);

/// Closed-form tree TSP: twice the weight of [x,A] outside [x,y] plus the weight of [x,y].
double tsp_tree(const WeightedTree& t, int x, const PointSet& targets, int y);

/// tau on the tree metric via tsp_tree.
double tau_tree(const WeightedTree& t, const LamplighterPoint& u, const LamplighterPoint& v);

/// True when (edge, set) is a valid index of the travelling-salesman block,
/// i.e. the edge is not needed to travel between vertices of `set`.
bool is_tsp_index(const WeightedTree& t, int edge, const PointSet& set);

/// The travelling-salesman block f(A, x): one coordinate (e, A_{x,e}) of value w_e
/// for every edge e whose far side (seen from x) contains a lamp.
SparseVector ts_tree_f_block(const WeightedTree& t, const LamplighterPoint& p);

/// g(A, x) = (f(A, x), (w_e) for e on [root, x]). Distortion at most 6 against tau on the tree.
SparseVector embed_ts_tree(const WeightedTree& t, const LamplighterPoint& p);

struct FBlockBounds {
  double lower = 0.0;  // weight of [x, A xor B] outside [x, y]
  double upper = 0.0;  // 2 * lower + 2 * weight of [x, y]
};

/// Bounds sandwiching ||f(A,x) - f(B,y)||_1.
FBlockBounds f_block_bounds(const WeightedTree& t, const LamplighterPoint& u,
                            const LamplighterPoint& v);

}  // namespace lamplighter
