#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lamplighter {

/// Absolute tolerance used for every floating point equality in the library.
inline constexpr double kTolerance = 1e-9;

struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

/// Thrown when a graph is not connected. Carries one unreachable pair.
class DisconnectedGraph : public std::invalid_argument {
 public:
  DisconnectedGraph(int from, int to);
  int from() const noexcept { return from_; }
  int to() const noexcept { return to_; }

 private:
  int from_;
  int to_;
};

/// Undirected graph on vertices 0..n-1 with positive edge weights.
///
/// The constructor rejects self-loops, duplicate undirected edges,
/// non-positive weights, out-of-range endpoints and disconnected graphs.
class WeightedGraph {
 public:
  WeightedGraph(int n, std::vector<Edge> edges);

  int size() const noexcept { return n_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  /// Neighbours of `v` as (vertex, weight) pairs.
  std::span<const std::pair<int, double>> neighbours(int v) const { return adjacency_[v]; }
  bool unit_weights() const noexcept;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

/// Finite point set with a dense distance table.
///
/// Construction does not enforce the metric axioms; use validate_metric()
/// to inspect a table, or MetricSpace::checked() to reject bad ones.
class MetricSpace {
 public:
  MetricSpace() = default;
  explicit MetricSpace(std::vector<std::vector<double>> table);
  MetricSpace(int n, std::vector<double> flat);

  static MetricSpace checked(std::vector<std::vector<double>> table);

  int size() const noexcept { return n_; }
  double operator()(int i, int j) const { return dist_[static_cast<std::size_t>(i) * n_ + j]; }
  double diameter() const;
  /// Smallest positive off-diagonal entry; 0 for spaces with fewer than 2 points.
  double min_positive_distance() const;
  std::span<const double> row(int i) const {
    return {dist_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }

 private:
  int n_ = 0;
  std::vector<double> dist_;
};

enum class ViolationKind { NonzeroDiagonal, Negative, ZeroOffDiagonal, Asymmetric, Triangle };

struct MetricViolation {
  ViolationKind kind;
  int i = 0;
  int j = 0;
  int k = -1;  // only for Triangle: d(i,k) > d(i,j) + d(j,k)
  double excess = 0.0;

  std::string describe() const;
};

MetricSpace shortest_path_metric(const WeightedGraph& g);

/// Reports every broken metric axiom. An empty result means `m` is a metric.
std::vector<MetricViolation> validate_metric(const MetricSpace& m, double tol = kTolerance);

using IndexPair = std::pair<std::size_t, std::size_t>;

struct DistortionReport {
  double expansion = 0.0;    // max d_target / d_source
  double contraction = 0.0;  // max d_source / d_target
  double distortion = 0.0;   // expansion * contraction
  IndexPair expansion_witness{};
  IndexPair contraction_witness{};
  std::size_t pair_count = 0;
};

/// Streaming form of measure_distortion for callers that evaluate pairs lazily.
class DistortionAccumulator {
 public:
  void add(IndexPair pair, double source, double target);
  bool empty() const noexcept { return report_.pair_count == 0; }
  /// Throws std::logic_error when no pair was added.
  DistortionReport report() const;
  /// Combines two accumulators; witnesses follow the larger ratio.
  void merge(const DistortionAccumulator& other);

 private:
  DistortionReport report_{};
};

using PairDistance = std::function<double(std::size_t, std::size_t)>;

/// Throws std::invalid_argument on an empty pair list or a zero source distance.
DistortionReport measure_distortion(std::span<const IndexPair> pairs, const PairDistance& source,
                                    const PairDistance& target);

}  // namespace lamplighter
