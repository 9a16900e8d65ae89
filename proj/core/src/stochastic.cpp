#include "lamplighter/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "lamplighter/rng.hpp"

namespace lamplighter {

namespace {

double domination_slack(double d, double tol) { return tol * std::max(1.0, d); }

}  // namespace

TreeEmbedding::TreeEmbedding(WeightedTree tree, std::vector<int> point_map)
    : tree_(std::move(tree)), point_map_(std::move(point_map)) {
  if (point_map_.empty()) throw std::invalid_argument("tree embedding of an empty space");
  std::vector<char> used(tree_.size(), 0);
  for (int v : point_map_) {
    if (v < 0 || v >= tree_.size()) throw std::out_of_range("point map leaves the tree");
    if (used[v]) throw std::invalid_argument("point map is not injective at vertex " + std::to_string(v));
    used[v] = 1;
  }
}

TreeEmbedding TreeEmbedding::dominating(WeightedTree tree, std::vector<int> point_map,
                                        const MetricSpace& ground) {
  TreeEmbedding emb(std::move(tree), std::move(point_map));
  if (emb.ground_size() != ground.size()) throw std::invalid_argument("point map size mismatch");
  for (int x = 0; x < ground.size(); ++x) {
    for (int y = x + 1; y < ground.size(); ++y) {
      const double d = ground(x, y);
      if (emb.distance(x, y) < d - domination_slack(d, kTolerance)) {
        throw std::logic_error("tree embedding contracts pair (" + std::to_string(x) + "," +
                               std::to_string(y) + ")");
      }
    }
  }
  return emb;
}

StochasticEmbedding::StochasticEmbedding(std::vector<EmbeddingComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("stochastic embedding without components");
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.probability > 0.0) || c.probability > 1.0 + kTolerance) {
      throw std::invalid_argument("component probability outside (0, 1]");
    }
    if (c.embedding.ground_size() != components_.front().embedding.ground_size()) {
      throw std::invalid_argument("components embed different ground spaces");
    }
    total += c.probability;
  }
  if (std::abs(total - 1.0) > kTolerance) throw std::invalid_argument("probabilities do not sum to 1");
  uniform_ = std::all_of(components_.begin(), components_.end(), [&](const auto& c) {
    return c.probability == components_.front().probability;
  });
}

double StochasticEmbedding::expected_distance(int x, int y) const {
  if (uniform_) {
    // Sum first: integer-valued tree distances then give a correctly rounded mean.
    double total = 0.0;
    for (const auto& c : components_) total += c.embedding.distance(x, y);
    return total / static_cast<double>(components_.size());
  }
  double total = 0.0;
  for (const auto& c : components_) total += c.probability * c.embedding.distance(x, y);
  return total;
}

TreeEmbedding frt_sample(const MetricSpace& m, std::uint64_t seed) {
  const int n = m.size();
  if (n < 1) throw std::invalid_argument("frt_sample needs a nonempty space");
  if (n == 1) return TreeEmbedding(WeightedTree({-1}, {0.0}), {0});

  const double scale = m.min_positive_distance();
  const double diam = m.diameter() / scale;
  int top = 0;
  while (std::ldexp(1.0, top) < diam) ++top;

  Rng rng(seed);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<int>(order));
  const double beta = std::exp2(rng.uniform01());  // density 1/(beta ln 2) on [1, 2)

  std::vector<int> parent{-1};
  std::vector<double> weight{0.0};
  std::vector<int> node_of(n, 0);  // node of each point at the current level
  for (int level = top; level >= 0; --level) {
    const double radius = beta * std::ldexp(1.0, level - 1);
    std::map<std::pair<int, int>, int> clusters;  // (parent node, center) -> node
    std::vector<int> next(n);
    for (int x = 0; x < n; ++x) {
      int center = x;
      for (int c : order) {
        if (m(x, c) / scale <= radius) {
          center = c;
          break;
        }
      }
      auto [it, fresh] = clusters.try_emplace({node_of[x], center}, static_cast<int>(parent.size()));
      if (fresh) {
        parent.push_back(node_of[x]);
        weight.push_back(std::ldexp(scale, level + 1));
      }
      next[x] = it->second;
    }
    node_of = std::move(next);
  }
  return TreeEmbedding::dominating(WeightedTree(std::move(parent), std::move(weight)),
                                   std::move(node_of), m);
}

StochasticEmbedding frt_ensemble(const MetricSpace& m, std::size_t k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("frt_ensemble needs at least one sample");
  std::vector<EmbeddingComponent> components;
  components.reserve(k);
  const double p = 1.0 / static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) components.push_back({p, frt_sample(m, derive_seed(seed, i))});
  return StochasticEmbedding(std::move(components));
}

StochasticEmbedding karp_cycle_embedding(int n) {
  if (n < 3) throw std::invalid_argument("karp_cycle_embedding needs n >= 3");
  std::vector<EmbeddingComponent> components;
  components.reserve(n);
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  const double p = 1.0 / n;
  for (int j = 0; j < n; ++j) {
    // Deleting edge (j, j+1) leaves the path j+1, j+2, ..., j rooted at j+1.
    std::vector<int> parent(n);
    std::vector<double> weight(n, 1.0);
    const int root = (j + 1) % n;
    parent[root] = -1;
    for (int t = 1; t < n; ++t) parent[(root + t) % n] = (root + t - 1) % n;
    components.push_back({p, TreeEmbedding(WeightedTree(std::move(parent), std::move(weight)), identity)});
  }
  return StochasticEmbedding(std::move(components));
}

StochasticEmbedding identity_tree_embedding(const WeightedTree& t) {
  std::vector<int> identity(t.size());
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<EmbeddingComponent> components;
  components.push_back({1.0, TreeEmbedding(t, std::move(identity))});
  return StochasticEmbedding(std::move(components));
}

std::vector<DominationViolation> verify_domination(const StochasticEmbedding& se,
                                                   const MetricSpace& m, double tol) {
  std::vector<DominationViolation> out;
  for (std::size_t i = 0; i < se.size(); ++i) {
    const TreeEmbedding& emb = se[i].embedding;
    if (emb.ground_size() != m.size()) throw std::invalid_argument("embedding/metric size mismatch");
    for (int x = 0; x < m.size(); ++x) {
      for (int y = x + 1; y < m.size(); ++y) {
        const double d = m(x, y);
        const double td = emb.distance(x, y);
        if (td < d - domination_slack(d, tol)) out.push_back({i, x, y, d - td});
      }
    }
  }
  return out;
}

StretchReport expected_stretch(const StochasticEmbedding& se, const MetricSpace& m) {
  if (se.ground_size() != m.size()) throw std::invalid_argument("embedding/metric size mismatch");
  StretchReport best{1.0, 0, 0};
  bool first = true;
  for (int x = 0; x < m.size(); ++x) {
    for (int y = x + 1; y < m.size(); ++y) {
      const double s = se.expected_distance(x, y) / m(x, y);
      if (first || s > best.stretch) {
        best = {s, x, y};
        first = false;
      }
    }
  }
  return best;
}

}  // namespace lamplighter
