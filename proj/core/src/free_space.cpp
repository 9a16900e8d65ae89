#include "lamplighter/free_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lamplighter/rng.hpp"

namespace lamplighter {

Molecule::Molecule(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  double sum = 0.0;
  double mass = 0.0;
  for (const auto& [p, c] : entries) {
    if (p < 0) throw std::out_of_range("molecule point out of range");
    sum += c;
    mass += std::abs(c);
    if (!support_.empty() && support_.back().first == p) {
      support_.back().second += c;
    } else {
      support_.emplace_back(p, c);
    }
  }
  std::erase_if(support_, [](const Entry& e) { return e.second == 0.0; });
  if (std::abs(sum) > kTolerance * std::max(1.0, mass)) {
    throw std::invalid_argument("molecule is unbalanced: total mass " + std::to_string(sum));
  }
}

double Molecule::mass_l1() const {
  double total = 0.0;
  for (const auto& e : support_) total += std::abs(e.second);
  return total;
}

double Molecule::at(int point) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), point,
                             [](const Entry& e, int p) { return e.first < p; });
  return (it != support_.end() && it->first == point) ? it->second : 0.0;
}

Molecule Molecule::operator+(const Molecule& other) const {
  std::vector<Entry> all = support_;
  all.insert(all.end(), other.support_.begin(), other.support_.end());
  return Molecule(std::move(all));
}

Molecule Molecule::operator*(double factor) const {
  std::vector<Entry> all = support_;
  for (auto& e : all) e.second *= factor;
  return Molecule(std::move(all));
}

namespace {

/// Dense min-cost flow on source -> supplies -> demands -> sink.
class TransportSolver {
 public:
  TransportSolver(const MetricSpace& m, const Molecule& mu) {
    for (const auto& [p, c] : mu.support()) {
      if (p >= m.size()) throw std::out_of_range("molecule point outside the metric space");
      (c > 0.0 ? supply_ : demand_).emplace_back(p, std::abs(c));
    }
    nodes_ = supply_.size() + demand_.size() + 2;
    sink_ = nodes_ - 1;
    capacity_.assign(nodes_ * nodes_, 0.0);
    cost_.assign(nodes_ * nodes_, 0.0);
    flow_.assign(nodes_ * nodes_, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < supply_.size(); ++i) {
      capacity_[at(0, supply_node(i))] = supply_[i].second;
      total += supply_[i].second;
      for (std::size_t j = 0; j < demand_.size(); ++j) {
        const double d = m(supply_[i].first, demand_[j].first);
        capacity_[at(supply_node(i), demand_node(j))] = std::numeric_limits<double>::infinity();
        cost_[at(supply_node(i), demand_node(j))] = d;
        cost_[at(demand_node(j), supply_node(i))] = -d;
      }
    }
    for (std::size_t j = 0; j < demand_.size(); ++j) capacity_[at(demand_node(j), sink_)] = demand_[j].second;
    total_ = total;
    eps_ = 1e-12 * std::max(1.0, total);
  }

  double solve() {
    std::vector<double> potential(nodes_, 0.0);
    double remaining = total_;
    const std::size_t max_rounds = 16 * nodes_ * nodes_ + 16;
    for (std::size_t round = 0; remaining > eps_; ++round) {
      if (round > max_rounds) throw std::runtime_error("transport solver failed to converge");
      std::vector<std::size_t> prev;
      std::vector<double> dist = dijkstra(potential, prev);
      if (std::isinf(dist[sink_])) break;
      for (std::size_t v = 0; v < nodes_; ++v) potential[v] += std::min(dist[v], dist[sink_]);
      double push = remaining;
      for (std::size_t v = sink_; v != 0; v = prev[v]) push = std::min(push, residual(prev[v], v));
      for (std::size_t v = sink_; v != 0; v = prev[v]) {
        flow_[at(prev[v], v)] += push;
        flow_[at(v, prev[v])] -= push;
      }
      remaining -= push;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < supply_.size(); ++i) {
      for (std::size_t j = 0; j < demand_.size(); ++j) {
        const double f = flow_[at(supply_node(i), demand_node(j))];
        if (f > 0.0) total += f * cost_[at(supply_node(i), demand_node(j))];
      }
    }
    return total;
  }

 private:
  std::size_t at(std::size_t u, std::size_t v) const { return u * nodes_ + v; }
  std::size_t supply_node(std::size_t i) const { return 1 + i; }
  std::size_t demand_node(std::size_t j) const { return 1 + supply_.size() + j; }
  double residual(std::size_t u, std::size_t v) const { return capacity_[at(u, v)] - flow_[at(u, v)]; }

  std::vector<double> dijkstra(const std::vector<double>& potential, std::vector<std::size_t>& prev) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(nodes_, inf);
    std::vector<char> done(nodes_, 0);
    prev.assign(nodes_, 0);
    dist[0] = 0.0;
    for (;;) {
      std::size_t u = nodes_;
      for (std::size_t v = 0; v < nodes_; ++v) {
        if (!done[v] && !std::isinf(dist[v]) && (u == nodes_ || dist[v] < dist[u])) u = v;
      }
      if (u == nodes_) break;
      done[u] = 1;
      for (std::size_t v = 0; v < nodes_; ++v) {
        if (done[v] || residual(u, v) <= eps_) continue;
        // Clamp tiny negative reduced costs from rounding.
        const double reduced = std::max(0.0, cost_[at(u, v)] + potential[u] - potential[v]);
        if (dist[u] + reduced < dist[v]) {
          dist[v] = dist[u] + reduced;
          prev[v] = u;
        }
      }
    }
    return dist;
  }

  std::vector<std::pair<int, double>> supply_;
  std::vector<std::pair<int, double>> demand_;
  std::size_t nodes_ = 0;
  std::size_t sink_ = 0;
  std::vector<double> capacity_;
  std::vector<double> cost_;
  std::vector<double> flow_;
  double total_ = 0.0;
  double eps_ = 0.0;
};

}  // namespace

double lf_norm(const MetricSpace& m, const Molecule& mu) {
  if (mu.zero()) return 0.0;
  return TransportSolver(m, mu).solve();
}

TreeFreeNorm lf_norm_tree(const WeightedTree& t, const Molecule& mu) {
  std::vector<double> below(t.size(), 0.0);
  for (const auto& [p, c] : mu.support()) {
    if (p >= t.size()) throw std::out_of_range("molecule point outside the tree");
    below[p] += c;
  }
  auto order = t.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != t.root()) below[t.parent(*it)] += below[*it];
  }
  std::vector<SparseVector::Entry> entries;
  for (int v = 0; v < t.size(); ++v) {
    if (v == t.root() || below[v] == 0.0) continue;
    entries.emplace_back(CoordKey::subtree(v), t.weight(v) * below[v]);
  }
  TreeFreeNorm out;
  out.coordinates = SparseVector::from_entries(std::move(entries));
  out.value = out.coordinates.l1_norm();
  return out;
}

Molecule lift_molecule(const TreeEmbedding& emb, const Molecule& mu) {
  std::vector<Molecule::Entry> pushed;
  pushed.reserve(mu.support().size());
  for (const auto& [p, c] : mu.support()) {
    if (p >= emb.ground_size()) throw std::out_of_range("molecule point outside the ground space");
    pushed.emplace_back(emb.image(p), c);
  }
  return Molecule(std::move(pushed));
}

SparseVector lf_l1_embedding(const StochasticEmbedding& se, const Molecule& mu) {
  SparseVector out;
  for (std::size_t i = 0; i < se.size(); ++i) {
    const TreeEmbedding& emb = se[i].embedding;
    out.add(lf_norm_tree(emb.tree(), lift_molecule(emb, mu)).coordinates.scaled_by(se[i].probability)
                .scoped(static_cast<std::uint32_t>(i)));
  }
  return out;
}

Molecule random_molecule(int n, std::size_t max_support, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_molecule needs at least two points");
  Rng rng(seed);
  const std::size_t cap = std::min<std::size_t>(static_cast<std::size_t>(n), std::max<std::size_t>(2, max_support));
  const std::size_t size = 2 + static_cast<std::size_t>(rng.below(cap - 1));
  std::vector<int> points(n);
  for (int i = 0; i < n; ++i) points[i] = i;
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n) - i));
    std::swap(points[i], points[j]);
  }
  std::vector<Molecule::Entry> entries;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < size; ++i) {
    double c = static_cast<double>(static_cast<std::int64_t>(rng.below(8)) - 4);
    if (c >= 0.0) c += 1.0;  // values in {-4..-1, 1..4}
    entries.emplace_back(points[i], c);
    sum += c;
  }
  entries.emplace_back(points[size - 1], -sum);
  return Molecule(std::move(entries));
}

}  // namespace lamplighter
