#include "lamplighter/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

namespace lamplighter {

DisconnectedGraph::DisconnectedGraph(int from, int to)
    : std::invalid_argument("graph is disconnected: vertex " + std::to_string(to) +
                            " is unreachable from vertex " + std::to_string(from)),
      from_(from),
      to_(to) {}

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), adjacency_(n > 0 ? n : 0) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw std::invalid_argument("edge endpoint out of range: " + std::to_string(e.u) + "-" +
                                  std::to_string(e.v));
    }
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw std::invalid_argument("edge weight must be positive and finite");
    }
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw std::invalid_argument("duplicate edge " + std::to_string(e.u) + "-" +
                                  std::to_string(e.v));
    }
    adjacency_[e.u].emplace_back(e.v, e.w);
    adjacency_[e.v].emplace_back(e.u, e.w);
  }

  std::vector<char> reached(n, 0);
  std::vector<int> stack{0};
  reached[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [u, w] : adjacency_[v]) {
      if (!reached[u]) {
        reached[u] = 1;
        stack.push_back(u);
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!reached[v]) throw DisconnectedGraph(0, v);
  }
}

bool WeightedGraph::unit_weights() const noexcept {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w == 1.0; });
}

MetricSpace::MetricSpace(std::vector<std::vector<double>> table)
    : n_(static_cast<int>(table.size())) {
  dist_.reserve(table.size() * table.size());
  for (const auto& row : table) {
    if (row.size() != table.size()) throw std::invalid_argument("distance table is not square");
    dist_.insert(dist_.end(), row.begin(), row.end());
  }
}

MetricSpace::MetricSpace(int n, std::vector<double> flat) : n_(n), dist_(std::move(flat)) {
  if (n < 0 || dist_.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("flat distance table has wrong size");
  }
}

MetricSpace MetricSpace::checked(std::vector<std::vector<double>> table) {
  MetricSpace m(std::move(table));
  auto violations = validate_metric(m);
  if (!violations.empty()) throw std::invalid_argument(violations.front().describe());
  return m;
}

double MetricSpace::diameter() const {
  return dist_.empty() ? 0.0 : *std::max_element(dist_.begin(), dist_.end());
}

double MetricSpace::min_positive_distance() const {
  double best = 0.0;
  for (double d : dist_) {
    if (d > 0.0 && (best == 0.0 || d < best)) best = d;
  }
  return best;
}

std::string MetricViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ViolationKind::NonzeroDiagonal:
      os << "d(" << i << "," << i << ") is nonzero";
      break;
    case ViolationKind::Negative:
      os << "d(" << i << "," << j << ") is negative";
      break;
    case ViolationKind::ZeroOffDiagonal:
      os << "d(" << i << "," << j << ") is zero for distinct points";
      break;
    case ViolationKind::Asymmetric:
      os << "d(" << i << "," << j << ") != d(" << j << "," << i << ")";
      break;
    case ViolationKind::Triangle:
      os << "triangle inequality fails for (" << i << "," << j << "," << k << ")";
      break;
  }
  os << " by " << excess;
  return os.str();
}

MetricSpace shortest_path_metric(const WeightedGraph& g) {
  const int n = g.size();
  std::vector<double> flat(static_cast<std::size_t>(n) * n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  for (int s = 0; s < n; ++s) {
    double* dist = flat.data() + static_cast<std::size_t>(s) * n;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[s] = 0.0;
    queue.emplace(0.0, s);
    while (!queue.empty()) {
      auto [d, v] = queue.top();
      queue.pop();
      if (d > dist[v]) continue;
      for (auto [u, w] : g.neighbours(v)) {
        if (d + w < dist[u]) {
          dist[u] = d + w;
          queue.emplace(dist[u], u);
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      if (std::isinf(dist[v])) throw DisconnectedGraph(s, v);
    }
  }
  // Relaxation order can leave last-bit asymmetries; the table is symmetric by definition.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d = std::min(flat[static_cast<std::size_t>(i) * n + j], flat[static_cast<std::size_t>(j) * n + i]);
      flat[static_cast<std::size_t>(i) * n + j] = d;
      flat[static_cast<std::size_t>(j) * n + i] = d;
    }
  }
  return MetricSpace(n, std::move(flat));
}

std::vector<MetricViolation> validate_metric(const MetricSpace& m, double tol) {
  std::vector<MetricViolation> out;
  const int n = m.size();
  for (int i = 0; i < n; ++i) {
    if (std::abs(m(i, i)) > tol) out.push_back({ViolationKind::NonzeroDiagonal, i, i, -1, std::abs(m(i, i))});
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (m(i, j) < -tol) out.push_back({ViolationKind::Negative, i, j, -1, -m(i, j)});
      if (i < j) {
        if (std::abs(m(i, j)) <= tol) out.push_back({ViolationKind::ZeroOffDiagonal, i, j, -1, 0.0});
        double gap = std::abs(m(i, j) - m(j, i));
        if (gap > tol) out.push_back({ViolationKind::Asymmetric, i, j, -1, gap});
      }
    }
  }
  // On a symmetric table (i, j, k) and (k, j, i) are the same inequality.
  const bool symmetric = std::none_of(out.begin(), out.end(),
                                      [](const MetricViolation& v) { return v.kind == ViolationKind::Asymmetric; });
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = symmetric ? i + 1 : 0; k < n; ++k) {
        if (k == i || k == j) continue;
        double excess = m(i, k) - (m(i, j) + m(j, k));
        if (excess > tol) out.push_back({ViolationKind::Triangle, i, j, k, excess});
      }
    }
  }
  return out;
}

void DistortionAccumulator::add(IndexPair pair, double source, double target) {
  if (!(source > 0.0)) {
    throw std::invalid_argument("zero source distance for pair (" + std::to_string(pair.first) + "," +
                                std::to_string(pair.second) + ")");
  }
  double up = target / source;
  double down = target > 0.0 ? source / target : std::numeric_limits<double>::infinity();
  if (report_.pair_count == 0 || up > report_.expansion) {
    report_.expansion = up;
    report_.expansion_witness = pair;
  }
  if (report_.pair_count == 0 || down > report_.contraction) {
    report_.contraction = down;
    report_.contraction_witness = pair;
  }
  ++report_.pair_count;
}

void DistortionAccumulator::merge(const DistortionAccumulator& other) {
  const DistortionReport& o = other.report_;
  if (o.pair_count == 0) return;
  if (report_.pair_count == 0) {
    report_ = o;
    return;
  }
  if (o.expansion > report_.expansion) {
    report_.expansion = o.expansion;
    report_.expansion_witness = o.expansion_witness;
  }
  if (o.contraction > report_.contraction) {
    report_.contraction = o.contraction;
    report_.contraction_witness = o.contraction_witness;
  }
  report_.pair_count += o.pair_count;
}

DistortionReport DistortionAccumulator::report() const {
  if (report_.pair_count == 0) throw std::logic_error("distortion of an empty pair set");
  DistortionReport r = report_;
  r.distortion = r.expansion * r.contraction;
  return r;
}

DistortionReport measure_distortion(std::span<const IndexPair> pairs, const PairDistance& source,
                                    const PairDistance& target) {
  if (pairs.empty()) throw std::invalid_argument("measure_distortion needs at least one pair");
  DistortionAccumulator acc;
  for (const IndexPair& p : pairs) acc.add(p, source(p.first, p.second), target(p.first, p.second));
  return acc.report();
}

}  // namespace lamplighter
