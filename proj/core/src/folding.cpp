#include "lamplighter/folding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "lamplighter/rng.hpp"
#include "lamplighter/tree_embedding.hpp"

namespace lamplighter {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void check_same_dimension(const LatticePoint& a, const LatticePoint& b) {
  if (a.size() != b.size()) throw std::invalid_argument("lattice points of different dimensions");
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

LatticeSet make_lattice_set(std::vector<LatticePoint> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

LatticeSet lattice_symmetric_difference(const LatticeSet& a, const LatticeSet& b) {
  LatticeSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

LatticeWindow::LatticeWindow(int dim, std::int64_t r) : d(dim), radius(r) {
  if (dim < 1) throw std::invalid_argument("lattice dimension must be positive");
  if (r < 1) throw std::invalid_argument("lattice window radius must be at least 1");
}

bool LatticeWindow::contains(const LatticePoint& p) const {
  if (static_cast<int>(p.size()) != d) return false;
  return std::all_of(p.begin(), p.end(), [&](std::int64_t c) { return c >= -radius && c <= radius; });
}

std::int64_t lattice_distance(const LatticePoint& a, const LatticePoint& b) {
  check_same_dimension(a, b);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
  return total;
}

double lattice_tsp(const LatticePoint& x, const LatticeSet& targets, const LatticePoint& y,
                   std::size_t cap) {
  return tsp_exact_by(x, std::span<const LatticePoint>(targets), y,
                      [](const LatticePoint& a, const LatticePoint& b) {
                        return static_cast<double>(lattice_distance(a, b));
                      },
                      cap);
}

double lattice_tau(const LatticeConfig& u, const LatticeConfig& v, std::size_t cap) {
  return lattice_tsp(u.pos, lattice_symmetric_difference(u.lamps, v.lamps), v.pos, cap);
}

std::int64_t fold_line(std::int64_t n, std::int64_t z) {
  if (n < 1) throw std::invalid_argument("fold_line needs n >= 1");
  const std::int64_t i = floor_div(z, n);
  const std::int64_t j = z - i * n;
  return (i % 2 == 0) ? j : n - j - 1;
}

LatticePoint fold_lattice(std::int64_t n, const LatticePoint& v, const LatticePoint& x) {
  check_same_dimension(v, x);
  LatticePoint out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = fold_line(n, x[i] - v[i]);
  return out;
}

LatticePoint cell_of(std::int64_t n, const LatticePoint& v, const LatticePoint& x) {
  check_same_dimension(v, x);
  if (n < 1) throw std::invalid_argument("cell size must be positive");
  LatticePoint out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = floor_div(x[i] - v[i], n);
  return out;
}

LatticeSet fold_set(std::int64_t n, const LatticePoint& v, const LatticeSet& set) {
  // Group by cell, fold each piece, then take the symmetric-difference sum of the pieces.
  std::map<LatticePoint, LatticeSet> pieces;
  for (const LatticePoint& p : set) pieces[cell_of(n, v, p)].push_back(fold_lattice(n, v, p));
  LatticeSet out;
  for (auto& [cell, piece] : pieces) out = lattice_symmetric_difference(out, make_lattice_set(std::move(piece)));
  return out;
}

LatticeConfig fold_ts(std::int64_t n, const LatticePoint& v, const LatticeConfig& p) {
  return {fold_set(n, v, p.lamps), fold_lattice(n, v, p.pos)};
}

MetricSpace grid_metric(std::int64_t n, int d) {
  const std::int64_t count = ipow(n, d);
  if (count > 1 << 14) throw CapExceeded("grid too large for a dense metric", static_cast<std::size_t>(count), 1 << 14);
  const int m = static_cast<int>(count);
  std::vector<LatticePoint> points;
  points.reserve(m);
  for (int i = 0; i < m; ++i) points.push_back(grid_point(n, d, i));
  std::vector<double> flat(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      flat[static_cast<std::size_t>(i) * m + j] = static_cast<double>(lattice_distance(points[i], points[j]));
    }
  }
  return MetricSpace(m, std::move(flat));
}

int grid_index(std::int64_t n, const LatticePoint& p) {
  std::int64_t index = 0;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] < 0 || p[i] >= n) throw std::out_of_range("lattice point outside the grid");
    index = index * n + p[i];
  }
  return static_cast<int>(index);
}

LatticePoint grid_point(std::int64_t n, int d, int index) {
  LatticePoint p(d);
  std::int64_t rest = index;
  for (int i = 0; i < d; ++i) {
    p[i] = rest % n;
    rest /= n;
  }
  return p;
}

LamplighterPoint to_grid_config(std::int64_t n, const LatticeConfig& p) {
  LamplighterPoint out;
  out.pos = grid_index(n, p.pos);
  for (const LatticePoint& a : p.lamps) out.lamps.push_back(grid_index(n, a));
  out.lamps = make_point_set(std::move(out.lamps));
  return out;
}

PairSample local_grid_pairs(std::int64_t n, int d, std::size_t count, std::int64_t reach,
                            std::uint64_t seed) {
  Rng rng(seed);
  const int m = static_cast<int>(ipow(n, d));
  auto near = [&](int center) {
    LatticePoint c = grid_point(n, d, center);
    LatticePoint p(d);
    for (int i = 0; i < d; ++i) {
      std::int64_t lo = std::max<std::int64_t>(0, c[i] - reach);
      std::int64_t hi = std::min<std::int64_t>(n - 1, c[i] + reach);
      p[i] = lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    return grid_index(n, p);
  };
  auto near_set = [&](int center) {
    std::vector<int> pts;
    const auto size = rng.below(5);
    for (std::uint64_t i = 0; i < size; ++i) pts.push_back(near(center));
    return make_point_set(std::move(pts));
  };
  PairSample s;
  while (s.pairs.size() < count) {
    const int x = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
    LamplighterPoint u{near_set(x), x};
    LamplighterPoint v{symmetric_difference(u.lamps, near_set(x)), near(x)};
    if (u == v) continue;
    s.points.push_back(std::move(u));
    s.points.push_back(std::move(v));
    s.pairs.emplace_back(s.points.size() - 2, s.points.size() - 1);
  }
  return s;
}

CoarseEmbedding::CoarseEmbedding(const CoarseOptions& options) : options_(options) {
  if (options.d < 2) throw std::invalid_argument("coarse embedding needs d >= 2");
  if (options.levels < 1) throw std::invalid_argument("coarse embedding needs at least one scale");
  if (options.levels > 5) {
    throw CapExceeded("coarse embedding scale count", static_cast<std::size_t>(options.levels), 5);
  }
  const std::int64_t top = std::int64_t{1} << (1 << options.levels);
  const double points = std::pow(static_cast<double>(top), options.d);
  if (points > static_cast<double>(kCoarseGridCap)) {
    throw CapExceeded("coarse embedding grid [0,n_K)^d", static_cast<std::size_t>(std::min(points, 1e18)),
                      kCoarseGridCap);
  }
  for (int k = 1; k <= options.levels; ++k) {
    const std::int64_t n = std::int64_t{1} << (1 << k);
    const std::uint64_t scale_seed = derive_seed(options.seed, static_cast<std::uint64_t>(k));
    MetricSpace grid = grid_metric(n, options.d);
    StochasticEmbedding ensemble = frt_ensemble(grid, options.trees_per_scale, derive_seed(scale_seed, 0));
    CoarseScale scale{k, n, std::move(grid), std::move(ensemble), 1.0, 3.0, 1.0, {}, false};
    scale.stretch = expected_stretch(scale.ensemble, scale.grid).stretch;
    scale.normalizer = 3.0 * scale.stretch;

    const int cells = scale.grid.size();
    if (static_cast<std::size_t>(cells) <= options.max_translates) {
      for (int i = 0; i < cells; ++i) scale.translates.push_back(grid_point(n, options.d, i));
    } else {
      std::vector<int> all(cells);
      for (int i = 0; i < cells; ++i) all[i] = i;
      Rng rng(derive_seed(scale_seed, 1));
      rng.shuffle(std::span<int>(all));
      all.resize(options.max_translates);
      std::sort(all.begin(), all.end());
      for (int i : all) scale.translates.push_back(grid_point(n, options.d, i));
      scale.subsampled = true;
    }
    scales_.push_back(std::move(scale));

    // Co-Lipschitz calibration on random and on local pairs of the grid.
    PairSample calibration = sampled_pairs(cells, options.calibration_pairs / 2, 8, derive_seed(scale_seed, 2));
    append_sample(calibration, local_grid_pairs(n, options.d, options.calibration_pairs - options.calibration_pairs / 2,
                                                4, derive_seed(scale_seed, 3)));
    double worst = 1.0;
    const CoarseScale& built = scales_.back();
    for (auto [a, b] : calibration.pairs) {
      const double t = tau(built.grid, calibration.points[a], calibration.points[b]);
      if (t <= 0.0) continue;
      worst = std::max(worst, t / grid_distance(k, calibration.points[a], calibration.points[b]));
    }
    scales_.back().co_lipschitz = worst;
  }
}

double CoarseEmbedding::grid_distance(int k, const LamplighterPoint& u, const LamplighterPoint& v) const {
  const CoarseScale& s = scale(k);
  double total = 0.0;
  for (const auto& c : s.ensemble.components()) {
    const TreeEmbedding& emb = c.embedding;
    total += c.probability * l1_distance(embed_ts_tree(emb.tree(), lift_point(emb, u)),
                                         embed_ts_tree(emb.tree(), lift_point(emb, v)));
  }
  return total / s.normalizer;
}

double CoarseEmbedding::scale_distance(int k, const LatticeConfig& u, const LatticeConfig& v) const {
  const CoarseScale& s = scale(k);
  double total = 0.0;
  for (const LatticePoint& t : s.translates) {
    total += grid_distance(k, to_grid_config(s.n, fold_ts(s.n, t, u)), to_grid_config(s.n, fold_ts(s.n, t, v)));
  }
  return total / static_cast<double>(s.translates.size());
}

double CoarseEmbedding::distance(const LatticeConfig& u, const LatticeConfig& v) const {
  double total = 0.0;
  for (const CoarseScale& s : scales_) total += scale_distance(s.k, u, v) / (s.k * s.k);
  return total;
}

double CoarseEmbedding::lipschitz_bound() const {
  double total = 0.0;
  for (const CoarseScale& s : scales_) total += 1.0 / (s.k * s.k);
  return total;
}

SparseVector coarse_embed(const CoarseEmbedding& h, const LatticeConfig& p) {
  SparseVector out;
  for (const CoarseScale& s : h.scales()) {
    const double weight = 1.0 / (static_cast<double>(s.k * s.k) * static_cast<double>(s.translates.size()) * s.normalizer);
    for (std::size_t t = 0; t < s.translates.size(); ++t) {
      LamplighterPoint folded = to_grid_config(s.n, fold_ts(s.n, s.translates[t], p));
      out.add(embed_ts_l1(s.ensemble, folded)
                  .scaled_by(weight)
                  .scoped(static_cast<std::uint32_t>(t))
                  .scoped(static_cast<std::uint32_t>(s.k)));
    }
  }
  return out;
}

}  // namespace lamplighter

namespace lamplighter {

std::vector<LatticePair> sample_lattice_pairs(const LatticeWindow& window, std::size_t count,
                                              std::int64_t reach, std::size_t max_lamps,
                                              std::uint64_t seed) {
  Rng rng(seed);
  auto uniform_in = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
  };
  auto near = [&](const LatticePoint& c) {
    LatticePoint p(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      p[i] = uniform_in(std::max(-window.radius, c[i] - reach), std::min(window.radius, c[i] + reach));
    }
    return p;
  };
  auto near_set = [&](const LatticePoint& c) {
    std::vector<LatticePoint> pts;
    const auto size = rng.below(max_lamps + 1);
    for (std::uint64_t i = 0; i < size; ++i) pts.push_back(near(c));
    return make_lattice_set(std::move(pts));
  };
  std::vector<LatticePair> out;
  while (out.size() < count) {
    LatticePoint x(static_cast<std::size_t>(window.d));
    for (auto& c : x) c = uniform_in(-window.radius, window.radius);
    LatticeConfig u{near_set(x), x};
    LatticeConfig v{lattice_symmetric_difference(u.lamps, near_set(x)), near(x)};
    if (u == v) continue;
    const double t = lattice_tau(u, v);
    out.push_back({std::move(u), std::move(v), t});
  }
  return out;
}

int tau_bucket(double tau) {
  if (tau <= 2.0) return 0;
  int k = 1;
  while (tau > std::ldexp(1.0, 1 << k)) ++k;
  return k;
}

CoarsePairCheck check_coarse_pair(const CoarseEmbedding& h, const LatticeConfig& u,
                                  const LatticeConfig& v) {
  CoarsePairCheck out;
  out.tau = lattice_tau(u, v);
  out.bucket = tau_bucket(out.tau);
  out.distance = h.distance(u, v);
  out.upper_bound = h.lipschitz_bound() * out.tau;

  LatticeSet support = lattice_symmetric_difference(u.lamps, v.lamps);
  support.push_back(u.pos);
  support.push_back(v.pos);
  support = make_lattice_set(std::move(support));
  for (const auto& a : support) {
    for (const auto& b : support) out.diameter = std::max(out.diameter, lattice_distance(a, b));
  }

  const int k = out.bucket;
  const int levels = h.options().levels;
  if (k < 1 || k + 1 > levels) return out;
  out.has_lower = true;
  const CoarseScale& next = h.scale(k + 1);
  const int d = h.options().d;
  out.lower_bound = std::pow(0.75, d) * out.tau /
                    (next.co_lipschitz * static_cast<double>((k + 1) * (k + 1)) * std::ldexp(1.0, k + 1));

  std::size_t inside = 0;
  for (const LatticePoint& t : next.translates) {
    const LatticePoint cell = cell_of(next.n, t, support.front());
    const bool same_cell = std::all_of(support.begin(), support.end(),
                                       [&](const LatticePoint& p) { return cell_of(next.n, t, p) == cell; });
    if (!same_cell) continue;
    ++inside;
    if (lattice_tau(fold_ts(next.n, t, u), fold_ts(next.n, t, v)) != out.tau) out.folded_isometry = false;
  }
  out.cell_fraction = static_cast<double>(inside) / static_cast<double>(next.translates.size());
  const double spare = static_cast<double>(std::max<std::int64_t>(0, next.n - out.diameter));
  out.cell_fraction_bound = std::pow(spare / static_cast<double>(next.n), d);
  return out;
}

}  // namespace lamplighter
