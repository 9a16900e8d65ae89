#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "lamplighter/metric.hpp"
#include "lamplighter/sparse_vector.hpp"
#include "lamplighter/stochastic.hpp"
#include "lamplighter/tree.hpp"

namespace lamplighter {

/// Finitely supported zero-sum function on the points of a space.
class Molecule {
 public:
  using Entry = std::pair<int, double>;

  Molecule() = default;
  /// Sums repeated points and drops zeros. Throws std::invalid_argument when
  /// the coefficients do not sum to zero (relative tolerance 1e-9).
  explicit Molecule(std::vector<Entry> entries);

  static Molecule dipole(int p, int q) { return Molecule({{p, 1.0}, {q, -1.0}}); }

  const std::vector<Entry>& support() const noexcept { return support_; }
  bool zero() const noexcept { return support_.empty(); }
  double mass_l1() const;
  double at(int point) const;

  Molecule operator+(const Molecule& other) const;
  Molecule operator*(double factor) const;

 private:
  std::vector<Entry> support_;
};

/// Optimal transport cost between the positive and negative parts of `mu`,
/// by successive shortest augmenting paths with node potentials.
double lf_norm(const MetricSpace& m, const Molecule& mu);

struct TreeFreeNorm {
  double value = 0.0;
  /// Subtree(v) -> w_v * (mass of mu below the edge (v, parent v)), signed.
  SparseVector coordinates;
};

/// Free-space norm on a tree through the isometry with l1 over the edges.
TreeFreeNorm lf_norm_tree(const WeightedTree& t, const Molecule& mu);

/// Pushforward of `mu` along the injective point map of `emb`.
Molecule lift_molecule(const TreeEmbedding& emb, const Molecule& mu);

/// Linear map sending mu to the direct sum over components of p_i times the
/// tree coordinates of its lift.
SparseVector lf_l1_embedding(const StochasticEmbedding& se, const Molecule& mu);

/// Random molecule on points 0..n-1 with 2..max_support support points and
/// integer coefficients in [-4, 4]; the last coefficient balances the sum.
Molecule random_molecule(int n, std::size_t max_support, std::uint64_t seed);

}  // namespace lamplighter
