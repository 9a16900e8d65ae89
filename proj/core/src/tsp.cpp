#include "lamplighter/tsp.hpp"

#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

namespace lamplighter {

PointSet make_point_set(std::vector<int> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

PointSet symmetric_difference(const PointSet& a, const PointSet& b) {
  PointSet out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

CapExceeded::CapExceeded(const char* what, std::size_t size, std::size_t cap)
    : std::length_error(std::string(what) + ": size " + std::to_string(size) + " > cap " +
                        std::to_string(cap)),
      size_(size),
      cap_(cap) {}

double held_karp_route(std::span<const double> local, std::size_t k) {
  const std::size_t m = k + 2;
  auto d = [&](std::size_t i, std::size_t j) { return local[i * m + j]; };
  if (k == 0) return d(0, 1);
  if (k == 1) return d(0, 2) + d(2, 1);

  // dp[mask * k + last]: cheapest route from start through `mask`, ending at `last`.
  const std::size_t states = std::size_t{1} << k;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dp(states * k, inf);
  for (std::size_t j = 0; j < k; ++j) dp[(std::size_t{1} << j) * k + j] = d(0, j + 2);
  for (std::size_t mask = 1; mask < states; ++mask) {
    for (std::size_t last = 0; last < k; ++last) {
      const double here = dp[mask * k + last];
      if (here == inf) continue;
      std::size_t rest = (states - 1) & ~mask;
      while (rest) {
        std::size_t next = static_cast<std::size_t>(std::countr_zero(rest));
        rest &= rest - 1;
        double& slot = dp[(mask | (std::size_t{1} << next)) * k + next];
        slot = std::min(slot, here + d(last + 2, next + 2));
      }
    }
  }
  double best = inf;
  for (std::size_t last = 0; last < k; ++last) {
    best = std::min(best, dp[(states - 1) * k + last] + d(last + 2, 1));
  }
  return best;
}

double tsp_exact(const TspInstance& inst, std::size_t cap) {
  if (inst.space == nullptr) throw std::invalid_argument("tsp instance without a metric space");
  const MetricSpace& m = *inst.space;
  auto in_range = [&](int p) { return p >= 0 && p < m.size(); };
  if (!in_range(inst.start) || !in_range(inst.end)) throw std::out_of_range("tsp endpoint out of range");
  for (int t : inst.targets) {
    if (!in_range(t)) throw std::out_of_range("tsp target out of range");
  }
  return tsp_exact_by(inst.start, std::span<const int>(inst.targets), inst.end,
                      [&](int a, int b) { return m(a, b); }, cap);
}

double tau(const MetricSpace& space, const LamplighterPoint& u, const LamplighterPoint& v,
           std::size_t cap) {
  return tsp_exact({&space, u.pos, symmetric_difference(u.lamps, v.lamps), v.pos}, cap);
}

double lamplighter_distance(const MetricSpace& space, const LamplighterPoint& u,
                            const LamplighterPoint& v, std::size_t cap) {
  PointSet diff = symmetric_difference(u.lamps, v.lamps);
  const double lamps = static_cast<double>(diff.size());
  return tsp_exact({&space, u.pos, std::move(diff), v.pos}, cap) + lamps;
}

std::size_t lamplighter_state_index(int n, std::uint32_t mask, int pos) {
  return static_cast<std::size_t>(mask) * static_cast<std::size_t>(n) + static_cast<std::size_t>(pos);
}

std::uint32_t lamp_mask(const PointSet& lamps) {
  std::uint32_t mask = 0;
  for (int a : lamps) {
    if (a < 0 || a >= 32) throw std::out_of_range("lamp index does not fit a 32-bit mask");
    mask |= std::uint32_t{1} << a;
  }
  return mask;
}

PointSet lamps_from_mask(std::uint32_t mask) {
  PointSet out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

namespace {

void check_bfs_input(const WeightedGraph& g, const LamplighterPoint& u) {
  if (g.size() > kLamplighterBfsCap) {
    throw CapExceeded("lamplighter graph too large for BFS", static_cast<std::size_t>(g.size()),
                      kLamplighterBfsCap);
  }
  if (!g.unit_weights()) throw std::invalid_argument("lamplighter BFS needs unit edge weights");
  if (u.pos < 0 || u.pos >= g.size()) throw std::out_of_range("lamplighter position out of range");
  for (int a : u.lamps) {
    if (a < 0 || a >= g.size()) throw std::out_of_range("lamp out of range");
  }
}

}  // namespace

std::vector<int> lamplighter_bfs_all(const WeightedGraph& g, const LamplighterPoint& u) {
  check_bfs_input(g, u);
  const int n = g.size();
  const std::size_t total = (std::size_t{1} << n) * static_cast<std::size_t>(n);
  std::vector<int> dist(total, -1);
  std::deque<std::size_t> queue;
  const std::size_t source = lamplighter_state_index(n, lamp_mask(u.lamps), u.pos);
  dist[source] = 0;
  queue.push_back(source);
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    const auto mask = static_cast<std::uint32_t>(s / static_cast<std::size_t>(n));
    const int pos = static_cast<int>(s % static_cast<std::size_t>(n));
    auto visit = [&](std::size_t t) {
      if (dist[t] < 0) {
        dist[t] = dist[s] + 1;
        queue.push_back(t);
      }
    };
    visit(lamplighter_state_index(n, mask ^ (std::uint32_t{1} << pos), pos));
    for (auto [w, weight] : g.neighbours(pos)) visit(lamplighter_state_index(n, mask, w));
  }
  return dist;
}

int lamplighter_bfs_oracle(const WeightedGraph& g, const LamplighterPoint& u,
                           const LamplighterPoint& v) {
  check_bfs_input(g, v);
  auto all = lamplighter_bfs_all(g, u);
  return all[lamplighter_state_index(g.size(), lamp_mask(v.lamps), v.pos)];
}

}  // namespace lamplighter
