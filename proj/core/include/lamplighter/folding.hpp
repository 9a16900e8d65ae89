#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lamplighter/lifting.hpp"
#include "lamplighter/metric.hpp"
#include "lamplighter/sparse_vector.hpp"
#include "lamplighter/stochastic.hpp"
#include "lamplighter/tsp.hpp"

namespace lamplighter {

using LatticePoint = std::vector<std::int64_t>;
/// Sorted, duplicate-free set of lattice points of one dimension.
using LatticeSet = std::vector<LatticePoint>;

LatticeSet make_lattice_set(std::vector<LatticePoint> points);
LatticeSet lattice_symmetric_difference(const LatticeSet& a, const LatticeSet& b);

/// Lamplighter configuration over Z^d.
struct LatticeConfig {
  LatticeSet lamps;
  LatticePoint pos;

  friend bool operator==(const LatticeConfig&, const LatticeConfig&) = default;
};

/// Finite box [-radius, radius]^d that experiments stay inside.
struct LatticeWindow {
  int d = 2;
  std::int64_t radius = 1;

  LatticeWindow(int dim, std::int64_t r);
  bool contains(const LatticePoint& p) const;
};

std::int64_t lattice_distance(const LatticePoint& a, const LatticePoint& b);

/// tsp(x, targets, y) in Z^d with the l1 (graph) metric.
double lattice_tsp(const LatticePoint& x, const LatticeSet& targets, const LatticePoint& y,
                   std::size_t cap = kDefaultTspCap);
double lattice_tau(const LatticeConfig& u, const LatticeConfig& v, std::size_t cap = kDefaultTspCap);

/// Reflect-and-repeat retraction of Z onto {0, ..., n-1}.
std::int64_t fold_line(std::int64_t n, std::int64_t z);

/// Coordinatewise fold of x - v.
LatticePoint fold_lattice(std::int64_t n, const LatticePoint& v, const LatticePoint& x);

/// Index s of the cell v + n*s + [0,n)^d containing x.
LatticePoint cell_of(std::int64_t n, const LatticePoint& v, const LatticePoint& x);

/// Symmetric-difference sum over cells of the folded pieces of `set`.
LatticeSet fold_set(std::int64_t n, const LatticePoint& v, const LatticeSet& set);

/// (A, x) -> (fold_set(A), fold_lattice(x)).
LatticeConfig fold_ts(std::int64_t n, const LatticePoint& v, const LatticeConfig& p);

/// Grid [0,n)^d as a metric space; point index sum_i c_i n^i.
MetricSpace grid_metric(std::int64_t n, int d);
int grid_index(std::int64_t n, const LatticePoint& p);
LatticePoint grid_point(std::int64_t n, int d, int index);
/// Converts a configuration inside [0,n)^d to grid indices.
LamplighterPoint to_grid_config(std::int64_t n, const LatticeConfig& p);

struct CoarseOptions {
  int d = 2;
  int levels = 2;                     // K: scales k = 1..K with n_k = 2^(2^k)
  std::size_t trees_per_scale = 64;   // FRT trees in each scale's ensemble
  std::size_t calibration_pairs = 2000;
  std::size_t max_translates = 256;   // beyond this, translates are subsampled
  std::uint64_t seed = 1;
};

/// Largest grid [0,n_K)^d the coarse embedding will build.
inline constexpr std::size_t kCoarseGridCap = 4096;

/// One scale of the truncated coarse embedding.
struct CoarseScale {
  int k = 1;
  std::int64_t n = 4;
  MetricSpace grid;
  StochasticEmbedding ensemble;
  double stretch = 1.0;        // exact expected stretch D_k of the ensemble on the grid
  double normalizer = 3.0;     // 3 * D_k; dividing by it makes f_{n_k} 1-Lipschitz for tau
  double co_lipschitz = 1.0;   // measured max tau / ||f(u) - f(v)|| of the normalized map
  std::vector<LatticePoint> translates;
  bool subsampled = false;
};

/// h(A, x) = sum_k g_k(A, x) / k^2 truncated at K scales, where g_k averages the
/// normalized grid embedding f_{n_k} over folded copies indexed by translates.
class CoarseEmbedding {
 public:
  explicit CoarseEmbedding(const CoarseOptions& options);

  const CoarseOptions& options() const noexcept { return options_; }
  const std::vector<CoarseScale>& scales() const noexcept { return scales_; }
  const CoarseScale& scale(int k) const { return scales_.at(static_cast<std::size_t>(k - 1)); }

  /// ||f_n(u) - f_n(v)||_1 for the normalized map of scale k on grid configurations.
  double grid_distance(int k, const LamplighterPoint& u, const LamplighterPoint& v) const;
  /// ||g_k(u) - g_k(v)||_1.
  double scale_distance(int k, const LatticeConfig& u, const LatticeConfig& v) const;
  /// ||h(u) - h(v)||_1.
  double distance(const LatticeConfig& u, const LatticeConfig& v) const;
  /// sum_{k <= K} 1 / k^2.
  double lipschitz_bound() const;

 private:
  CoarseOptions options_;
  std::vector<CoarseScale> scales_;
};

/// Explicit image h(p), scoped by (k, translate index, tree component).
SparseVector coarse_embed(const CoarseEmbedding& h, const LatticeConfig& p);

/// Random pairs of grid configurations on [0,n)^d that stay within `reach` of
/// each other: used to calibrate the co-Lipschitz constant at small tau.
PairSample local_grid_pairs(std::int64_t n, int d, std::size_t count, std::int64_t reach,
                            std::uint64_t seed);

}  // namespace lamplighter

namespace lamplighter {

struct LatticePair {
  LatticeConfig u;
  LatticeConfig v;
  double tau = 0.0;
};

/// Random pairs of lattice configurations inside `window`: positions and lamps
/// of v differ from u only within l1-distance `reach` of u's position, and at
/// most `max_lamps` lamps are drawn per set.
std::vector<LatticePair> sample_lattice_pairs(const LatticeWindow& window, std::size_t count,
                                              std::int64_t reach, std::size_t max_lamps,
                                              std::uint64_t seed);

/// Scale bucket of a tau value: 0 for tau <= 2, otherwise the k with
/// 2^(2^(k-1)) < tau <= 2^(2^k).
int tau_bucket(double tau);

/// Everything the truncated-embedding inequalities say about one pair.
struct CoarsePairCheck {
  double tau = 0.0;
  int bucket = 0;
  double distance = 0.0;     // ||h(u) - h(v)||_1
  double upper_bound = 0.0;  // lipschitz_bound() * tau
  bool has_lower = false;    // bucket k >= 1 with k + 1 <= K
  double lower_bound = 0.0;  // (3/4)^d tau / (K_{n_{k+1}} (k+1)^2 2^(k+1))
  std::int64_t diameter = 0;         // m = diam((A xor B) + {x, y})
  double cell_fraction = 0.0;        // share of scale-(k+1) translates whose cells contain the pair
  double cell_fraction_bound = 0.0;  // ((n_{k+1} - m) / n_{k+1})^d
  bool folded_isometry = true;       // tau preserved by every translate counted above
};

CoarsePairCheck check_coarse_pair(const CoarseEmbedding& h, const LatticeConfig& u,
                                  const LatticeConfig& v);

}  // namespace lamplighter
