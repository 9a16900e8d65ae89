#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "lamplighter/metric.hpp"

namespace lamplighter {

/// Sorted, duplicate-free list of point indices.
using PointSet = std::vector<int>;

PointSet make_point_set(std::vector<int> points);
PointSet symmetric_difference(const PointSet& a, const PointSet& b);

/// Lamplighter configuration (A, x): lamps that are on and the lamplighter position.
struct LamplighterPoint {
  PointSet lamps;
  int pos = 0;

  friend bool operator==(const LamplighterPoint&, const LamplighterPoint&) = default;
  friend auto operator<=>(const LamplighterPoint&, const LamplighterPoint&) = default;
};

inline constexpr std::size_t kDefaultTspCap = 20;

/// Thrown when an exact computation would exceed its size cap.
class CapExceeded : public std::length_error {
 public:
  CapExceeded(const char* what, std::size_t size, std::size_t cap);
  std::size_t size() const noexcept { return size_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t size_;
  std::size_t cap_;
};

struct TspInstance {
  const MetricSpace* space = nullptr;
  int start = 0;
  PointSet targets;
  int end = 0;
};

/// Cheapest route start -> (every target, any order) -> end in the complete
/// graph on the metric. `local` is the (k+2)x(k+2) distance table with row 0
/// the start, row 1 the end and rows 2.. the k targets. Targets must already
/// exclude the endpoints.
double held_karp_route(std::span<const double> local, std::size_t k);

double tsp_exact(const TspInstance& inst, std::size_t cap = kDefaultTspCap);

/// Generic form for point types outside a MetricSpace (lattice points, tree vertices).
template <class Point, class Distance>
double tsp_exact_by(const Point& start, std::span<const Point> targets, const Point& end,
                    Distance&& dist, std::size_t cap = kDefaultTspCap) {
  std::vector<Point> kept;
  kept.reserve(targets.size());
  for (const Point& t : targets) {
    if (!(t == start) && !(t == end)) kept.push_back(t);
  }
  if (kept.size() > cap) throw CapExceeded("tsp target set exceeds cap", kept.size(), cap);
  const std::size_t m = kept.size() + 2;
  std::vector<double> local(m * m, 0.0);
  auto at = [&](std::size_t i) -> const Point& {
    return i == 0 ? start : (i == 1 ? end : kept[i - 2]);
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      double d = dist(at(i), at(j));
      local[i * m + j] = d;
      local[j * m + i] = d;
    }
  }
  return held_karp_route(local, kept.size());
}

/// Travelling salesman semi-metric: tsp_exact(x, A xor B, y).
double tau(const MetricSpace& space, const LamplighterPoint& u, const LamplighterPoint& v,
           std::size_t cap = kDefaultTspCap);

/// tau(u, v) + |A xor B|.
double lamplighter_distance(const MetricSpace& space, const LamplighterPoint& u,
                            const LamplighterPoint& v, std::size_t cap = kDefaultTspCap);

inline constexpr int kLamplighterBfsCap = 14;

/// Breadth-first distance in the explicit lamplighter graph of a unit-weight graph.
int lamplighter_bfs_oracle(const WeightedGraph& g, const LamplighterPoint& u,
                           const LamplighterPoint& v);

/// Distances from `u` to every configuration of the explicit lamplighter
/// graph, indexed by lamplighter_state_index().
std::vector<int> lamplighter_bfs_all(const WeightedGraph& g, const LamplighterPoint& u);

std::size_t lamplighter_state_index(int n, std::uint32_t lamp_mask, int pos);
std::uint32_t lamp_mask(const PointSet& lamps);
PointSet lamps_from_mask(std::uint32_t mask);

}  // namespace lamplighter
