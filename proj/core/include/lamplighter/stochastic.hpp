#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lamplighter/metric.hpp"
#include "lamplighter/tree.hpp"

namespace lamplighter {

/// Injective map from the points of a ground space into the vertices of a tree.
class TreeEmbedding {
 public:
  TreeEmbedding(WeightedTree tree, std::vector<int> point_map);

  /// Same as the constructor, and additionally throws std::logic_error when the
  /// tree distance of some pair falls below its ground distance.
  static TreeEmbedding dominating(WeightedTree tree, std::vector<int> point_map,
                                  const MetricSpace& ground);

  const WeightedTree& tree() const noexcept { return tree_; }
  const std::vector<int>& point_map() const noexcept { return point_map_; }
  int image(int x) const { return point_map_[x]; }
  int ground_size() const noexcept { return static_cast<int>(point_map_.size()); }
  double distance(int x, int y) const { return tree_.distance(point_map_[x], point_map_[y]); }

 private:
  WeightedTree tree_;
  std::vector<int> point_map_;
};

struct EmbeddingComponent {
  double probability = 0.0;
  TreeEmbedding embedding;
};

/// Finite distribution over dominating tree embeddings of one ground space.
class StochasticEmbedding {
 public:
  /// Probabilities must lie in (0, 1] and sum to 1 within 1e-9.
  explicit StochasticEmbedding(std::vector<EmbeddingComponent> components);

  std::size_t size() const noexcept { return components_.size(); }
  const EmbeddingComponent& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<EmbeddingComponent>& components() const noexcept { return components_; }
  /// True when every component carries the same probability.
  bool uniform() const noexcept { return uniform_; }
  int ground_size() const { return components_.front().embedding.ground_size(); }

  /// Expected tree distance sum_i p_i d_i(f_i(x), f_i(y)).
  double expected_distance(int x, int y) const;

 private:
  std::vector<EmbeddingComponent> components_;
  bool uniform_ = false;
};

/// One tree of the hierarchical random-partition (FRT) construction.
TreeEmbedding frt_sample(const MetricSpace& m, std::uint64_t seed);

/// `k` independent FRT trees, sample i seeded by derive_seed(seed, i), each with probability 1/k.
StochasticEmbedding frt_ensemble(const MetricSpace& m, std::size_t k, std::uint64_t seed);

/// The n unit-weight paths obtained by deleting one edge of the n-cycle, uniformly.
StochasticEmbedding karp_cycle_embedding(int n);

/// A tree metric embedded into itself by the identity.
StochasticEmbedding identity_tree_embedding(const WeightedTree& t);

struct DominationViolation {
  std::size_t component = 0;
  int x = 0;
  int y = 0;
  double deficit = 0.0;  // d_X(x,y) - d_tree(f(x), f(y)) > 0
};

std::vector<DominationViolation> verify_domination(const StochasticEmbedding& se,
                                                   const MetricSpace& m,
                                                   double tol = kTolerance);

struct StretchReport {
  double stretch = 1.0;
  int x = 0;
  int y = 0;
};

/// Smallest D with sum_i p_i d_i(f_i(x), f_i(y)) <= D d_X(x, y) on every pair.
StretchReport expected_stretch(const StochasticEmbedding& se, const MetricSpace& m);

}  // namespace lamplighter
