#include "lamplighter/lifting.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <tuple>

#include "lamplighter/rng.hpp"
#include "lamplighter/tree_embedding.hpp"

namespace lamplighter {

namespace {

SparseVector lamp_block(const PointSet& lamps) {
  std::vector<SparseVector::Entry> entries;
  entries.reserve(lamps.size());
  for (int a : lamps) entries.emplace_back(CoordKey::lamp(a), 1.0);
  return SparseVector::from_entries(std::move(entries));
}

/// Memoized tau on the ground metric; tau only depends on (x, A xor B, y).
class TauCache {
 public:
  TauCache(const MetricSpace& m, std::size_t cap) : m_(m), cap_(cap) {}

  double operator()(const LamplighterPoint& u, const LamplighterPoint& v) {
    auto key = std::make_tuple(u.pos, v.pos, symmetric_difference(u.lamps, v.lamps));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    double value = tsp_exact({&m_, u.pos, std::get<2>(key), v.pos}, cap_);
    cache_.emplace(std::move(key), value);
    return value;
  }

 private:
  const MetricSpace& m_;
  std::size_t cap_;
  std::map<std::tuple<int, int, PointSet>, double> cache_;
};

void check_point(const LamplighterPoint& p, int n) {
  if (p.pos < 0 || p.pos >= n) throw std::out_of_range("configuration position out of range");
  for (int a : p.lamps) {
    if (a < 0 || a >= n) throw std::out_of_range("lamp out of range");
  }
}

}  // namespace

LamplighterPoint lift_point(const TreeEmbedding& emb, const LamplighterPoint& p) {
  check_point(p, emb.ground_size());
  LamplighterPoint out;
  out.pos = emb.image(p.pos);
  out.lamps.reserve(p.lamps.size());
  for (int a : p.lamps) out.lamps.push_back(emb.image(a));
  std::sort(out.lamps.begin(), out.lamps.end());
  return out;
}

SparseVector embed_ts_l1(const StochasticEmbedding& se, const LamplighterPoint& p) {
  SparseVector out;
  for (std::size_t i = 0; i < se.size(); ++i) {
    const TreeEmbedding& emb = se[i].embedding;
    out.add(embed_ts_tree(emb.tree(), lift_point(emb, p)).scaled_by(se[i].probability)
                .scoped(static_cast<std::uint32_t>(i)));
  }
  return out;
}

SparseVector embed_lamplighter_l1(const StochasticEmbedding& se, const LamplighterPoint& p) {
  SparseVector out = embed_ts_l1(se, p);
  out.add(lamp_block(p.lamps));
  return out;
}

double pipeline_l1_distance(const StochasticEmbedding& se, const LamplighterPoint& u,
                            const LamplighterPoint& v) {
  double total = 0.0;
  for (const auto& c : se.components()) {
    const TreeEmbedding& emb = c.embedding;
    total += c.probability * l1_distance(embed_ts_tree(emb.tree(), lift_point(emb, u)),
                                         embed_ts_tree(emb.tree(), lift_point(emb, v)));
  }
  return total + static_cast<double>(symmetric_difference(u.lamps, v.lamps).size());
}

PairSample exhaustive_pairs(int n, int max_lamps) {
  if (n < 1 || n > 30) throw std::invalid_argument("exhaustive_pairs supports 1 <= n <= 30");
  PairSample s;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    if (std::popcount(mask) > max_lamps) continue;
    PointSet lamps = lamps_from_mask(mask);
    for (int x = 0; x < n; ++x) s.points.push_back({lamps, x});
  }
  s.pairs.reserve(s.points.size() * (s.points.size() - 1) / 2);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    for (std::size_t j = i + 1; j < s.points.size(); ++j) s.pairs.emplace_back(i, j);
  }
  return s;
}

PairSample sampled_pairs(int n, std::size_t count, std::size_t max_symdiff, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sampled_pairs needs n >= 1");
  Rng rng(seed);
  auto random_set = [&](std::size_t size) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    // Partial Fisher-Yates: the first `size` slots are a uniform subset.
    for (std::size_t i = 0; i < size; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n) - i));
      std::swap(all[i], all[j]);
    }
    all.resize(size);
    return make_point_set(std::move(all));
  };
  const std::size_t un = static_cast<std::size_t>(n);
  const std::size_t max_base = std::min(un, max_symdiff / 2 + 1);
  const std::size_t max_diff = std::min(un, max_symdiff);
  PairSample s;
  while (s.pairs.size() < count) {
    LamplighterPoint u{random_set(rng.below(max_base + 1)), static_cast<int>(rng.below(un))};
    PointSet diff = random_set(rng.below(max_diff + 1));
    LamplighterPoint v{symmetric_difference(u.lamps, diff), static_cast<int>(rng.below(un))};
    if (u == v) continue;
    s.points.push_back(std::move(u));
    s.points.push_back(std::move(v));
    s.pairs.emplace_back(s.points.size() - 2, s.points.size() - 1);
  }
  return s;
}

void append_sample(PairSample& into, const PairSample& extra) {
  const std::size_t offset = into.points.size();
  into.points.insert(into.points.end(), extra.points.begin(), extra.points.end());
  for (auto [a, b] : extra.pairs) into.pairs.emplace_back(a + offset, b + offset);
}

PipelineReport pipeline_distortion(const StochasticEmbedding& se, const MetricSpace& m,
                                   const PairSample& sample, std::size_t cap) {
  if (sample.pairs.empty()) throw std::invalid_argument("pipeline_distortion needs at least one pair");
  for (const auto& p : sample.points) check_point(p, m.size());

  // Component-outer accumulation keeps one tree's images in memory at a time.
  std::vector<double> ts_distance(sample.pairs.size(), 0.0);
  std::vector<SparseVector> images(sample.points.size());
  for (const auto& c : se.components()) {
    const TreeEmbedding& emb = c.embedding;
    for (std::size_t i = 0; i < sample.points.size(); ++i) {
      images[i] = embed_ts_tree(emb.tree(), lift_point(emb, sample.points[i]));
    }
    for (std::size_t k = 0; k < sample.pairs.size(); ++k) {
      auto [a, b] = sample.pairs[k];
      ts_distance[k] += c.probability * l1_distance(images[a], images[b]);
    }
  }

  TauCache tau_of(m, cap);
  PipelineReport report;
  DistortionAccumulator la;
  DistortionAccumulator ts;
  for (std::size_t k = 0; k < sample.pairs.size(); ++k) {
    const IndexPair pair = sample.pairs[k];
    const LamplighterPoint& u = sample.points[pair.first];
    const LamplighterPoint& v = sample.points[pair.second];
    const double t = tau_of(u, v);
    const double lamps = static_cast<double>(symmetric_difference(u.lamps, v.lamps).size());
    la.add(pair, t + lamps, ts_distance[k] + lamps);
    if (t > 0.0) {
      ts.add(pair, t, ts_distance[k]);
    } else {
      ++report.tau_zero_pairs;
      if (ts_distance[k] > kTolerance) ++report.tau_zero_mismatches;
    }
  }
  report.lamplighter = la.report();
  if (!ts.empty()) report.ts = ts.report();
  return report;
}

LiftingReport verify_lifting(const StochasticEmbedding& se, const MetricSpace& m,
                             const PairSample& sample, double stretch_bound, std::size_t cap) {
  TauCache tau_of(m, cap);
  // Lifted tau only depends on (x, A xor B, y) as well.
  std::map<std::tuple<int, int, PointSet>, char> seen;
  LiftingReport report;
  bool first = true;
  for (auto [a, b] : sample.pairs) {
    const LamplighterPoint& u = sample.points[a];
    const LamplighterPoint& v = sample.points[b];
    LamplighterPoint cu{symmetric_difference(u.lamps, v.lamps), u.pos};
    LamplighterPoint cv{{}, v.pos};
    if (!seen.emplace(std::make_tuple(cu.pos, cv.pos, cu.lamps), 1).second) continue;
    const double ground = tau_of(cu, cv);
    double average = 0.0;
    double min_ratio = 0.0;
    bool dominated = true;
    for (std::size_t i = 0; i < se.size(); ++i) {
      const TreeEmbedding& emb = se[i].embedding;
      const double lifted = tau_tree(emb.tree(), lift_point(emb, cu), lift_point(emb, cv));
      average += se[i].probability * lifted;
      if (lifted < ground - kTolerance * std::max(1.0, ground)) dominated = false;
      if (ground > 0.0) min_ratio = (i == 0) ? lifted / ground : std::min(min_ratio, lifted / ground);
    }
    ++report.pairs_checked;
    if (!dominated) ++report.domination_violations;
    if (average > stretch_bound * ground + kTolerance * std::max(1.0, ground)) ++report.average_violations;
    if (ground > 0.0) {
      report.worst_average_ratio = std::max(report.worst_average_ratio, average / ground);
      report.min_domination_ratio = first ? min_ratio : std::min(report.min_domination_ratio, min_ratio);
      first = false;
    }
  }
  return report;
}

}  // namespace lamplighter
