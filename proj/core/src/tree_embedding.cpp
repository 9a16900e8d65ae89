#include "lamplighter/tree_embedding.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace lamplighter {

namespace {

void append_path(const WeightedTree& t, int a, int b, EdgeSet& out) {
  while (t.depth(a) > t.depth(b)) {
    out.push_back(a);
    a = t.parent(a);
  }
  while (t.depth(b) > t.depth(a)) {
    out.push_back(b);
    b = t.parent(b);
  }
  while (a != b) {
    out.push_back(a);
    out.push_back(b);
    a = t.parent(a);
    b = t.parent(b);
  }
}

void canonicalize(EdgeSet& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

void check_vertex(const WeightedTree& t, int v) {
  if (v < 0 || v >= t.size()) throw std::out_of_range("tree vertex out of range");
}

}  // namespace

EdgeSet path_edges(const WeightedTree& t, int x, int y) {
  check_vertex(t, x);
  check_vertex(t, y);
  EdgeSet out;
  append_path(t, x, y, out);
  canonicalize(out);
  return out;
}

EdgeSet steiner_edges(const WeightedTree& t, int x, const PointSet& targets) {
  check_vertex(t, x);
  EdgeSet out;
  for (int a : targets) {
    check_vertex(t, a);
    append_path(t, x, a, out);
  }
  canonicalize(out);
  return out;
}

double total_weight(const WeightedTree& t, const EdgeSet& edges) {
  double total = 0.0;
  for (int e : edges) total += t.weight(e);
  return total;
}

double tsp_tree(const WeightedTree& t, int x, const PointSet& targets, int y) {
  EdgeSet spanned = steiner_edges(t, x, targets);
  EdgeSet direct = path_edges(t, x, y);
  EdgeSet detour;
  std::set_difference(spanned.begin(), spanned.end(), direct.begin(), direct.end(),
                      std::back_inserter(detour));
  return 2.0 * total_weight(t, detour) + total_weight(t, direct);
}

double tau_tree(const WeightedTree& t, const LamplighterPoint& u, const LamplighterPoint& v) {
  return tsp_tree(t, u.pos, symmetric_difference(u.lamps, v.lamps), v.pos);
}

bool is_tsp_index(const WeightedTree& t, int edge, const PointSet& set) {
  if (set.empty() || edge < 0 || edge >= t.size() || edge == t.root()) return false;
  EdgeSet spanned = steiner_edges(t, set.front(), set);
  return !std::binary_search(spanned.begin(), spanned.end(), edge);
}

SparseVector ts_tree_f_block(const WeightedTree& t, const LamplighterPoint& p) {
  std::vector<SparseVector::Entry> entries;
  if (p.lamps.empty()) return {};
  EdgeSet spanned = steiner_edges(t, p.pos, p.lamps);
  entries.reserve(spanned.size());
  for (int e : spanned) {
    // Seen from x, the far side of edge e is the subtree below e unless x itself lies there.
    const bool x_below = t.in_subtree(p.pos, e);
    std::vector<int> far;
    for (int a : p.lamps) {
      if (t.in_subtree(a, e) != x_below) far.push_back(a);
    }
    assert(!far.empty());
    assert(is_tsp_index(t, e, far));
    entries.emplace_back(CoordKey::tsp(e, std::move(far)), t.weight(e));
  }
  return SparseVector::from_entries(std::move(entries));
}

SparseVector embed_ts_tree(const WeightedTree& t, const LamplighterPoint& p) {
  check_vertex(t, p.pos);
  SparseVector f = ts_tree_f_block(t, p);
  std::vector<SparseVector::Entry> root_block;
  for (int v = p.pos; v != t.root(); v = t.parent(v)) {
    root_block.emplace_back(CoordKey::root_path(v), t.weight(v));
  }
  f.add(SparseVector::from_entries(std::move(root_block)));
  return f;
}

FBlockBounds f_block_bounds(const WeightedTree& t, const LamplighterPoint& u,
                            const LamplighterPoint& v) {
  EdgeSet spanned = steiner_edges(t, u.pos, symmetric_difference(u.lamps, v.lamps));
  EdgeSet direct = path_edges(t, u.pos, v.pos);
  EdgeSet detour;
  std::set_difference(spanned.begin(), spanned.end(), direct.begin(), direct.end(),
                      std::back_inserter(detour));
  const double lower = total_weight(t, detour);
  return {lower, 2.0 * lower + 2.0 * total_weight(t, direct)};
}

}  // namespace lamplighter
