#include "lamplighter/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "lamplighter/folding.hpp"
#include "lamplighter/free_space.hpp"
#include "lamplighter/lifting.hpp"
#include "lamplighter/rng.hpp"
#include "lamplighter/stochastic.hpp"
#include "lamplighter/tree_embedding.hpp"

namespace lamplighter {

namespace {

using Json = nlohmann::ordered_json;

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t at = text.find(sep, start);
    out.emplace_back(text.substr(start, at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::size_t parse_size(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid ") + what + ": '" + s + "'");
  }
}

void add_check(ReportRow& row, std::string name, bool passed, double value, double bound) {
  row.checks.push_back({std::move(name), passed, value, bound});
}

std::string pair_text(int x, int y) { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }

std::string point_text(const LamplighterPoint& p) {
  std::string s = "({";
  for (std::size_t i = 0; i < p.lamps.size(); ++i) s += (i ? "," : "") + std::to_string(p.lamps[i]);
  return s + "}," + std::to_string(p.pos) + ")";
}

std::string witness_text(const PairSample& sample, IndexPair pair) {
  return point_text(sample.points[pair.first]) + "-" + point_text(sample.points[pair.second]);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double exhaustive_pair_count(int n, int max_lamps) {
  double points = 0.0;
  for (int j = 0; j <= std::min(n, max_lamps); ++j) points += binomial(n, j) * n;
  return points * (points - 1.0) / 2.0;
}

StochasticEmbedding build_embedder(const ExperimentConfig& c, const WeightedGraph& g, const MetricSpace& m) {
  switch (c.embedder) {
    case EmbedderKind::Frt:
      return frt_ensemble(m, c.samples, derive_seed(c.seed, 1));
    case EmbedderKind::Karp:
      return karp_cycle_embedding(g.size());
    case EmbedderKind::IdentityTree:
      if (static_cast<int>(g.edges().size()) != g.size() - 1) {
        throw UsageError("identity_tree embedder needs a tree-shaped graph");
      }
      return identity_tree_embedding(WeightedTree::from_graph(g, 0));
  }
  throw UsageError("unknown embedder");
}

PairSample resolve_pairs(const ExperimentConfig& c, int n, std::string& resolved) {
  PairPolicy p = c.pairs;
  if (p.kind == PairPolicy::Kind::Auto) {
    const bool small = n <= 20 && exhaustive_pair_count(n, 2) <= static_cast<double>(kAutoExhaustivePairCap);
    p.kind = small ? PairPolicy::Kind::Mixed : PairPolicy::Kind::Sampled;
    p.max_lamps = 2;
    p.count = 1000;
    p.max_symdiff = 12;
  }
  resolved = p.to_string();
  const bool wants_exhaustive = p.kind == PairPolicy::Kind::Exhaustive || p.kind == PairPolicy::Kind::Mixed;
  if (wants_exhaustive) {
    if (n > 20 || exhaustive_pair_count(n, p.max_lamps) > static_cast<double>(kExhaustivePairCap)) {
      throw UsageError("exhaustive pair set too large for n=" + std::to_string(n) + "; use sampled pairs");
    }
  }
  PairSample sample;
  if (wants_exhaustive) sample = exhaustive_pairs(n, p.max_lamps);
  if (p.kind == PairPolicy::Kind::Sampled || p.kind == PairPolicy::Kind::Mixed) {
    append_sample(sample, sampled_pairs(n, p.count, p.max_symdiff, derive_seed(c.seed, 2)));
  }
  if (sample.pairs.empty()) throw UsageError("pair policy produced no pairs");
  return sample;
}

void add_distortion_metrics(ReportRow& row, const std::string& prefix, const DistortionReport& r) {
  row.metrics.emplace_back(prefix + "distortion", r.distortion);
  row.metrics.emplace_back(prefix + "expansion", r.expansion);
  row.metrics.emplace_back(prefix + "contraction", r.contraction);
}

/// Shared prologue: ground metric, embedder, domination and stretch.
struct Prologue {
  WeightedGraph graph;
  MetricSpace metric;
  StochasticEmbedding embedding;
  StretchReport stretch;
};

Prologue build_prologue(const ExperimentConfig& c, ReportRow& row) {
  WeightedGraph g = generate(c.family, c.params, derive_seed(c.seed, 0));
  MetricSpace m = shortest_path_metric(g);
  row.points = m.size();
  if (m.size() < 2) throw UsageError("experiments need at least two points");
  const auto violations = validate_metric(m);
  add_check(row, "metric_valid", violations.empty(), static_cast<double>(violations.size()), 0.0);

  StochasticEmbedding se = build_embedder(c, g, m);
  const auto dom = verify_domination(se, m);
  add_check(row, "domination", dom.empty(), static_cast<double>(dom.size()), 0.0);

  const StretchReport st = expected_stretch(se, m);
  row.metrics.emplace_back("d_measured", st.stretch);
  row.metrics.emplace_back("components", static_cast<double>(se.size()));
  row.witnesses.emplace_back("stretch_pair", pair_text(st.x, st.y));
  const double n = static_cast<double>(m.size());
  switch (c.embedder) {
    case EmbedderKind::Karp:
      add_check(row, "karp_exact_stretch", st.stretch == 2.0 * (n - 1.0) / n, st.stretch, 2.0 * (n - 1.0) / n);
      break;
    case EmbedderKind::Frt:
      add_check(row, "frt_stretch_ceiling", st.stretch <= 16.0 * std::log2(n), st.stretch, 16.0 * std::log2(n));
      break;
    case EmbedderKind::IdentityTree:
      add_check(row, "identity_stretch", std::abs(st.stretch - 1.0) <= kTolerance, st.stretch, 1.0);
      break;
  }
  return {std::move(g), std::move(m), std::move(se), st};
}

void run_distortion(const ExperimentConfig& c, ReportRow& row) {
  Prologue pro = build_prologue(c, row);
  const double bound = 6.0 * pro.stretch.stretch;
  PairSample sample = resolve_pairs(c, pro.metric.size(), row.resolved_pairs);
  row.metrics.emplace_back("pair_count", static_cast<double>(sample.pairs.size()));

  const PipelineReport pr = pipeline_distortion(pro.embedding, pro.metric, sample, c.tsp_cap);
  add_distortion_metrics(row, "", pr.lamplighter);
  add_distortion_metrics(row, "ts_", pr.ts);
  row.metrics.emplace_back("tau_zero_pairs", static_cast<double>(pr.tau_zero_pairs));
  row.witnesses.emplace_back("expansion_pair", witness_text(sample, pr.lamplighter.expansion_witness));
  row.witnesses.emplace_back("contraction_pair", witness_text(sample, pr.lamplighter.contraction_witness));
  add_check(row, "pipeline_distortion_le_6D", pr.lamplighter.distortion <= bound + kBoundSlack,
            pr.lamplighter.distortion, bound);
  if (pr.ts.pair_count > 0) {
    add_check(row, "ts_distortion_le_6D", pr.ts.distortion <= bound + kBoundSlack, pr.ts.distortion, bound);
  }
  add_check(row, "tau_zero_consistent", pr.tau_zero_mismatches == 0,
            static_cast<double>(pr.tau_zero_mismatches), 0.0);

  const LiftingReport lr = verify_lifting(pro.embedding, pro.metric, sample, pro.stretch.stretch, c.tsp_cap);
  row.metrics.emplace_back("lifting_classes", static_cast<double>(lr.pairs_checked));
  row.metrics.emplace_back("lifting_worst_average_ratio", lr.worst_average_ratio);
  add_check(row, "lifted_domination", lr.domination_violations == 0,
            static_cast<double>(lr.domination_violations), 0.0);
  add_check(row, "lifted_average_le_D", lr.average_violations == 0,
            static_cast<double>(lr.average_violations), 0.0);
}

void run_free_space(const ExperimentConfig& c, ReportRow& row) {
  Prologue pro = build_prologue(c, row);
  const MetricSpace& m = pro.metric;
  const StochasticEmbedding& se = pro.embedding;
  const double stretch = pro.stretch.stretch;
  row.resolved_pairs = "molecules:" + std::to_string(c.molecules);

  const WeightedTree& first_tree = se[0].embedding.tree();
  const MetricSpace first_tree_metric = first_tree.to_metric();

  std::size_t dom_fail = 0;
  std::size_t avg_fail = 0;
  std::size_t norm_mismatch = 0;
  std::size_t tree_mismatch = 0;
  std::size_t linearity_fail = 0;
  DistortionAccumulator lf;
  Molecule previous;
  for (std::size_t i = 0; i < c.molecules; ++i) {
    const Molecule mu = random_molecule(m.size(), 6, derive_seed(derive_seed(c.seed, 3), i));
    const double norm = lf_norm(m, mu);
    if (norm <= 0.0) continue;
    double average = 0.0;
    for (const auto& comp : se.components()) {
      const double value = lf_norm_tree(comp.embedding.tree(), lift_molecule(comp.embedding, mu)).value;
      if (value < norm - kTolerance * std::max(1.0, norm)) ++dom_fail;
      average += comp.probability * value;
    }
    if (average > stretch * norm + kTolerance * std::max(1.0, norm)) ++avg_fail;
    const double image = lf_l1_embedding(se, mu).l1_norm();
    if (std::abs(image - average) > kTolerance * std::max(1.0, average)) ++norm_mismatch;
    const Molecule lifted = lift_molecule(se[0].embedding, mu);
    const double tree_value = lf_norm_tree(first_tree, lifted).value;
    if (std::abs(tree_value - lf_norm(first_tree_metric, lifted)) > kTolerance * std::max(1.0, tree_value)) {
      ++tree_mismatch;
    }
    if (!previous.zero()) {
      SparseVector sum = lf_l1_embedding(se, previous);
      sum.add(lf_l1_embedding(se, mu), 1.0);
      const SparseVector direct = lf_l1_embedding(se, previous + mu);
      if (l1_distance(sum, direct) > kTolerance * std::max(1.0, direct.l1_norm())) ++linearity_fail;
    }
    previous = mu;
    lf.add({i, i}, norm, image);
  }
  add_check(row, "component_domination", dom_fail == 0, static_cast<double>(dom_fail), 0.0);
  add_check(row, "averaged_le_D", avg_fail == 0, static_cast<double>(avg_fail), 0.0);
  add_check(row, "image_norm_is_average", norm_mismatch == 0, static_cast<double>(norm_mismatch), 0.0);
  add_check(row, "tree_isometry", tree_mismatch == 0, static_cast<double>(tree_mismatch), 0.0);
  add_check(row, "linearity", linearity_fail == 0, static_cast<double>(linearity_fail), 0.0);

  double dipole_max = 0.0;
  double dipole_min = std::numeric_limits<double>::infinity();
  for (int x = 0; x < m.size(); ++x) {
    for (int y = x + 1; y < m.size(); ++y) {
      const double ratio = lf_l1_embedding(se, Molecule::dipole(x, y)).l1_norm() / m(x, y);
      dipole_max = std::max(dipole_max, ratio);
      dipole_min = std::min(dipole_min, ratio);
      lf.add({static_cast<std::size_t>(x), static_cast<std::size_t>(y)}, m(x, y), ratio * m(x, y));
    }
  }
  row.metrics.emplace_back("dipole_max_ratio", dipole_max);
  row.metrics.emplace_back("dipole_min_ratio", dipole_min);
  add_check(row, "dipole_distortion_eq_stretch", std::abs(dipole_max - stretch) <= kTolerance * std::max(1.0, stretch),
            dipole_max, stretch);
  add_check(row, "dipole_noncontracting", dipole_min >= 1.0 - kTolerance, dipole_min, 1.0);
  if (!lf.empty()) add_distortion_metrics(row, "", lf.report());
}

std::vector<LatticePair> bucket_pairs(const LatticeWindow& window, int bucket, std::size_t count, std::uint64_t seed) {
  const std::int64_t reach = bucket == 0 ? 1 : (bucket == 1 ? 2 : 4);
  std::vector<LatticePair> out;
  for (std::uint64_t round = 0; out.size() < count; ++round) {
    if (round > 10000) throw std::runtime_error("could not fill tau bucket " + std::to_string(bucket));
    for (auto& p : sample_lattice_pairs(window, 64, reach, 3, derive_seed(seed, round))) {
      if (p.tau > 0.0 && tau_bucket(p.tau) == bucket && out.size() < count) out.push_back(std::move(p));
    }
  }
  return out;
}

void run_fold(const ExperimentConfig& c, ReportRow& row) {
  CoarseOptions opts;
  opts.d = c.params.d;
  opts.levels = c.params.k > 0 ? c.params.k : 2;
  opts.trees_per_scale = c.samples;
  opts.seed = derive_seed(c.seed, 4);
  const CoarseEmbedding h(opts);
  const std::size_t per_bucket = c.pairs.kind == PairPolicy::Kind::Auto ? 200 : c.pairs.count;
  row.resolved_pairs = "per_bucket:" + std::to_string(per_bucket);
  const std::int64_t top = h.scales().back().n;
  const LatticeWindow window(opts.d, 2 * top);
  row.points = static_cast<int>(h.scales().back().grid.size());

  for (const CoarseScale& s : h.scales()) {
    const std::string k = std::to_string(s.k);
    row.metrics.emplace_back("scale" + k + "_n", static_cast<double>(s.n));
    row.metrics.emplace_back("scale" + k + "_stretch", s.stretch);
    row.metrics.emplace_back("scale" + k + "_co_lipschitz", s.co_lipschitz);
    row.metrics.emplace_back("scale" + k + "_translates", static_cast<double>(s.translates.size()));
    row.metrics.emplace_back("scale" + k + "_subsampled", s.subsampled ? 1.0 : 0.0);
  }

  // Folding checks on every scale.
  std::size_t lipschitz_fail = 0;
  std::size_t isometry_fail = 0;
  std::size_t identity_fail = 0;
  std::size_t containment_fail = 0;
  std::size_t shortening_fail = 0;
  Rng rng(derive_seed(c.seed, 5));
  for (const CoarseScale& s : h.scales()) {
    auto pairs = sample_lattice_pairs(window, per_bucket, 2 * s.n, 4, derive_seed(c.seed, 6 + s.k));
    for (const auto& p : pairs) {
      LatticePoint v(opts.d);
      for (auto& x : v) x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(s.n)));
      const LatticeConfig fu = fold_ts(s.n, v, p.u);
      const LatticeConfig fv = fold_ts(s.n, v, p.v);
      if (lattice_tau(fu, fv) > p.tau) ++lipschitz_fail;
      const LatticeSet diff = lattice_symmetric_difference(p.u.lamps, p.v.lamps);
      const LatticeSet folded_diff = lattice_symmetric_difference(fu.lamps, fv.lamps);
      if (folded_diff != fold_set(s.n, v, diff)) ++identity_fail;
      std::vector<LatticePoint> image;
      for (const auto& a : diff) image.push_back(fold_lattice(s.n, v, a));
      const LatticeSet image_set = make_lattice_set(std::move(image));
      if (!std::includes(image_set.begin(), image_set.end(), folded_diff.begin(), folded_diff.end())) ++containment_fail;
      if (lattice_tsp(fu.pos, image_set, fv.pos) > lattice_tsp(p.u.pos, diff, p.v.pos)) ++shortening_fail;
      // Cell-confined copy: shift the pair into the cell of v that contains u's position.
      const LatticePoint cell = cell_of(s.n, v, p.u.pos);
      auto confine = [&](const LatticePoint& x) {
        LatticePoint y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = v[i] + s.n * cell[i] + fold_line(s.n, x[i] - v[i]);
        return y;
      };
      LatticeConfig cu{{}, confine(p.u.pos)};
      LatticeConfig cv{{}, confine(p.v.pos)};
      std::vector<LatticePoint> lamps;
      for (const auto& a : diff) lamps.push_back(confine(a));
      cu.lamps = make_lattice_set(std::move(lamps));
      if (lattice_tau(fold_ts(s.n, v, cu), fold_ts(s.n, v, cv)) != lattice_tau(cu, cv)) ++isometry_fail;
    }
  }
  add_check(row, "fold_lipschitz", lipschitz_fail == 0, static_cast<double>(lipschitz_fail), 0.0);
  add_check(row, "fold_cell_isometry", isometry_fail == 0, static_cast<double>(isometry_fail), 0.0);
  add_check(row, "fold_symmetric_difference_identity", identity_fail == 0, static_cast<double>(identity_fail), 0.0);
  add_check(row, "fold_containment", containment_fail == 0, static_cast<double>(containment_fail), 0.0);
  add_check(row, "fold_walk_shortening", shortening_fail == 0, static_cast<double>(shortening_fail), 0.0);

  // Truncated coarse embedding, per tau bucket.
  for (int bucket = 0; bucket <= opts.levels; ++bucket) {
    const auto pairs = bucket_pairs(window, bucket, per_bucket, derive_seed(c.seed, 100 + bucket));
    std::size_t upper_fail = 0;
    std::size_t lower_fail = 0;
    std::size_t cell_fail = 0;
    std::size_t iso_fail = 0;
    double worst_upper = 0.0;
    double worst_lower = std::numeric_limits<double>::infinity();
    bool any_lower = false;
    for (const auto& p : pairs) {
      const CoarsePairCheck r = check_coarse_pair(h, p.u, p.v);
      worst_upper = std::max(worst_upper, r.distance / r.tau);
      if (r.distance > r.upper_bound + kBoundSlack) ++upper_fail;
      if (r.has_lower) {
        any_lower = true;
        worst_lower = std::min(worst_lower, r.distance / r.lower_bound);
        if (r.distance < r.lower_bound - kBoundSlack) ++lower_fail;
        if (r.cell_fraction < r.cell_fraction_bound - kTolerance) ++cell_fail;
        if (!r.folded_isometry) ++iso_fail;
      }
    }
    const std::string b = "bucket" + std::to_string(bucket);
    row.metrics.emplace_back(b + "_max_h_over_tau", worst_upper);
    add_check(row, b + "_lipschitz_upper", upper_fail == 0, static_cast<double>(upper_fail), h.lipschitz_bound());
    if (any_lower) {
      row.metrics.emplace_back(b + "_min_h_over_lower", worst_lower);
      add_check(row, b + "_scale_lower_bound", lower_fail == 0, static_cast<double>(lower_fail), 0.0);
      add_check(row, b + "_cell_fraction", cell_fail == 0, static_cast<double>(cell_fail), 0.0);
      add_check(row, b + "_cell_isometry", iso_fail == 0, static_cast<double>(iso_fail), 0.0);
    }
  }
}

Json row_to_json(const ReportRow& r) {
  const ExperimentConfig& c = r.config;
  Json j;
  j["experiment"] = std::string(to_string(c.experiment));
  j["family"] = std::string(to_string(c.family));
  j["n"] = c.params.n;
  j["d"] = c.params.d;
  j["k"] = c.params.k;
  if (c.params.m > 0) j["m"] = c.params.m;
  if (c.family == Family::File) j["file"] = c.params.file;
  j["embedder"] = std::string(to_string(c.embedder));
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["pairs"] = r.resolved_pairs;
  j["cap"] = c.tsp_cap;
  j["tolerance"] = kTolerance;
  j["bound_slack"] = kBoundSlack;
  j["points"] = r.points;
  Json metrics = Json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = std::isfinite(v) ? Json(v) : Json(format_number(v));
  j["metrics"] = metrics;
  Json witnesses = Json::object();
  for (const auto& [k, v] : r.witnesses) witnesses[k] = v;
  j["witnesses"] = witnesses;
  Json checks = Json::array();
  for (const Check& ch : r.checks) {
    checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"value", ch.value}, {"bound", ch.bound}});
  }
  j["checks"] = checks;
  j["status"] = r.passed() ? "pass" : "fail";
  if (r.runtime_ms) j["runtime_ms"] = *r.runtime_ms;
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "experiment") c.experiment = parse_experiment(value.get<std::string>());
    else if (key == "family") c.family = parse_family(value.get<std::string>());
    else if (key == "n") c.params.n = value.get<int>();
    else if (key == "d") c.params.d = value.get<int>();
    else if (key == "k") c.params.k = value.get<int>();
    else if (key == "m") c.params.m = value.get<int>();
    else if (key == "file") c.params.file = value.get<std::string>();
    else if (key == "embedder") c.embedder = parse_embedder(value.get<std::string>());
    else if (key == "samples") c.samples = value.get<std::size_t>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else if (key == "pairs") c.pairs = PairPolicy::parse(value.get<std::string>());
    else if (key == "molecules") c.molecules = value.get<std::size_t>();
    else if (key == "cap") c.tsp_cap = value.get<std::size_t>();
    else throw UsageError("unknown suite key: " + key);
  }
  c.validate();
  return c;
}

}  // namespace

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Distortion: return "distortion";
    case ExperimentKind::FreeSpace: return "freespace";
    case ExperimentKind::Fold: return "fold";
  }
  return "unknown";
}

std::string_view to_string(EmbedderKind k) {
  switch (k) {
    case EmbedderKind::Frt: return "frt";
    case EmbedderKind::Karp: return "karp";
    case EmbedderKind::IdentityTree: return "identity_tree";
  }
  return "unknown";
}

ExperimentKind parse_experiment(std::string_view name) {
  if (name == "distortion") return ExperimentKind::Distortion;
  if (name == "freespace") return ExperimentKind::FreeSpace;
  if (name == "fold") return ExperimentKind::Fold;
  throw UsageError("unknown experiment: " + std::string(name));
}

EmbedderKind parse_embedder(std::string_view name) {
  if (name == "frt") return EmbedderKind::Frt;
  if (name == "karp") return EmbedderKind::Karp;
  if (name == "identity_tree") return EmbedderKind::IdentityTree;
  throw UsageError("unknown embedder: " + std::string(name));
}

ReportFormat parse_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw UsageError("unknown format: " + std::string(name));
}

PairPolicy PairPolicy::parse(std::string_view text) {
  auto parts = split(text, ':');
  PairPolicy p;
  const std::string& kind = parts[0];
  if (kind == "auto" && parts.size() == 1) {
    p.kind = Kind::Auto;
  } else if (kind == "exhaustive" && parts.size() <= 2) {
    p.kind = Kind::Exhaustive;
    p.max_lamps = parts.size() > 1 ? static_cast<int>(parse_size(parts[1], "max_lamps")) : 30;
  } else if (kind == "sampled" && parts.size() <= 3) {
    p.kind = Kind::Sampled;
    if (parts.size() > 1) p.count = parse_size(parts[1], "pair count");
    if (parts.size() > 2) p.max_symdiff = parse_size(parts[2], "max_symdiff");
  } else if (kind == "mixed" && parts.size() <= 4) {
    p.kind = Kind::Mixed;
    if (parts.size() > 1) p.max_lamps = static_cast<int>(parse_size(parts[1], "max_lamps"));
    if (parts.size() > 2) p.count = parse_size(parts[2], "pair count");
    if (parts.size() > 3) p.max_symdiff = parse_size(parts[3], "max_symdiff");
  } else {
    throw UsageError("invalid pair policy: '" + std::string(text) + "'");
  }
  return p;
}

std::string PairPolicy::to_string() const {
  switch (kind) {
    case Kind::Auto: return "auto";
    case Kind::Exhaustive: return "exhaustive:" + std::to_string(max_lamps);
    case Kind::Sampled: return "sampled:" + std::to_string(count) + ":" + std::to_string(max_symdiff);
    case Kind::Mixed:
      return "mixed:" + std::to_string(max_lamps) + ":" + std::to_string(count) + ":" + std::to_string(max_symdiff);
  }
  return "auto";
}

void ExperimentConfig::validate() const {
  if (samples < 1) throw UsageError("samples must be at least 1");
  if (embedder == EmbedderKind::Karp && family != Family::Cycle) throw UsageError("karp embedder requires family=cycle");
  if (embedder == EmbedderKind::IdentityTree && !is_tree_family(family) && family != Family::File) {
    throw UsageError("identity_tree embedder requires a tree family (path, random_tree) or a tree file");
  }
  if (family == Family::File && params.file.empty()) throw UsageError("family=file needs a graph file");
  if (experiment == ExperimentKind::Fold) {
    if (params.d < 2) throw UsageError("fold experiments need d >= 2");
    if (params.k < 0) throw UsageError("fold level must be nonnegative");
  } else if (family != Family::Diamond && family != Family::File && params.n < 1) {
    throw UsageError("family parameter n must be positive");
  }
  if (experiment == ExperimentKind::FreeSpace && molecules < 1) throw UsageError("molecules must be at least 1");
  if (tsp_cap < 1 || tsp_cap > 24) throw UsageError("tsp cap must be in 1..24");
}

bool ReportRow::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::optional<double> ReportRow::metric(std::string_view name) const {
  for (const auto& [k, v] : metrics) {
    if (k == name) return v;
  }
  return std::nullopt;
}

std::vector<ReportRow> run(const ExperimentConfig& config) {
  config.validate();
  ReportRow row;
  row.config = config;
  const auto started = std::chrono::steady_clock::now();
  try {
    switch (config.experiment) {
      case ExperimentKind::Distortion: run_distortion(config, row); break;
      case ExperimentKind::FreeSpace: run_free_space(config, row); break;
      case ExperimentKind::Fold: run_fold(config, row); break;
    }
  } catch (const UsageError&) {
    throw;
  } catch (const CapExceeded& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (config.timing) {
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  }
  return {std::move(row)};
}

std::string csv_header() {
  return "schema_version,experiment,family,n,d,k,embedder,samples,seed,pairs,cap,tolerance,points,"
         "d_measured,distortion,expansion,contraction,checks_passed,checks_total,status,failed_checks,runtime_ms";
}

std::string to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << csv_header() << '\n';
  for (const ReportRow& r : rows) {
    const ExperimentConfig& c = r.config;
    auto metric = [&](std::string_view name) {
      auto v = r.metric(name);
      return v ? format_number(*v) : std::string();
    };
    std::size_t passed = 0;
    std::string failed;
    for (const Check& ch : r.checks) {
      if (ch.passed) {
        ++passed;
      } else {
        failed += (failed.empty() ? "" : ";") + ch.name;
      }
    }
    os << kReportSchemaVersion << ',' << to_string(c.experiment) << ',' << to_string(c.family) << ','
       << c.params.n << ',' << c.params.d << ',' << c.params.k << ',' << to_string(c.embedder) << ','
       << c.samples << ',' << c.seed << ',' << r.resolved_pairs << ',' << c.tsp_cap << ','
       << format_number(kTolerance) << ',' << r.points << ',' << metric("d_measured") << ','
       << metric("distortion") << ',' << metric("expansion") << ',' << metric("contraction") << ','
       << passed << ',' << r.checks.size() << ',' << (r.passed() ? "pass" : "fail") << ',' << failed << ','
       << (r.runtime_ms ? format_number(*r.runtime_ms) : std::string()) << '\n';
  }
  return os.str();
}

std::string to_json(const std::vector<ReportRow>& rows) {
  Json doc;
  doc["schema_version"] = kReportSchemaVersion;
  Json arr = Json::array();
  for (const ReportRow& r : rows) arr.push_back(row_to_json(r));
  doc["rows"] = arr;
  return doc.dump(2) + "\n";
}

std::string render(const std::vector<ReportRow>& rows, ReportFormat format) {
  return format == ReportFormat::Csv ? to_csv(rows) : to_json(rows);
}

std::vector<ExperimentConfig> parse_suite(const std::string& json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("suite file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("experiments") || !doc["experiments"].is_array()) {
    throw UsageError("suite file needs an \"experiments\" array");
  }
  std::vector<ExperimentConfig> out;
  try {
    for (const auto& item : doc["experiments"]) out.push_back(config_from_json(item));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad suite entry: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return out;
}

std::vector<ExperimentConfig> preset_suite(std::string_view name) {
  std::vector<ExperimentConfig> out;
  auto add = [&](ExperimentKind kind, Family family, int n, EmbedderKind emb, std::size_t samples,
                 std::string_view pairs, int d = 2, int k = 0, int m = 0) {
    ExperimentConfig c;
    c.experiment = kind;
    c.family = family;
    c.params.n = n;
    c.params.d = d;
    c.params.k = k;
    c.params.m = m;
    c.embedder = emb;
    c.samples = samples;
    c.seed = 42;
    c.pairs = PairPolicy::parse(pairs);
    c.molecules = 200;
    out.push_back(c);
  };
  if (name == "smoke") {
    add(ExperimentKind::Distortion, Family::Cycle, 6, EmbedderKind::Karp, 1, "exhaustive");
    add(ExperimentKind::Distortion, Family::Path, 6, EmbedderKind::IdentityTree, 1, "exhaustive:3");
    add(ExperimentKind::Distortion, Family::Grid, 3, EmbedderKind::Frt, 20, "sampled:200:8");
    add(ExperimentKind::FreeSpace, Family::Cycle, 4, EmbedderKind::Karp, 1, "auto");
    add(ExperimentKind::FreeSpace, Family::Grid, 3, EmbedderKind::Frt, 20, "auto");
    add(ExperimentKind::Fold, Family::Grid, 0, EmbedderKind::Frt, 8, "sampled:20", 2, 1);
  } else if (name == "regression") {
    for (int n : {8, 16, 32, 64}) {
      add(ExperimentKind::Distortion, Family::Cycle, n, EmbedderKind::Frt, 200, "auto");
      add(ExperimentKind::Distortion, Family::Cycle, n, EmbedderKind::Karp, 1, "auto");
      const int side = n == 8 ? 2 : (n == 16 ? 4 : (n == 32 ? 4 : 8));
      add(ExperimentKind::Distortion, Family::Grid, side, EmbedderKind::Frt, 200, "auto", 2, 0, n / side);
      add(ExperimentKind::Distortion, Family::RandomTree, n, EmbedderKind::Frt, 200, "auto");
      add(ExperimentKind::Distortion, Family::RandomGraph, n, EmbedderKind::Frt, 200, "auto");
    }
    add(ExperimentKind::Distortion, Family::Diamond, 0, EmbedderKind::Frt, 200, "auto", 2, 3);
  } else {
    throw UsageError("unknown preset suite: " + std::string(name));
  }
  return out;
}

std::vector<ReportRow> run_suite(const std::vector<ExperimentConfig>& configs) {
  std::vector<ReportRow> rows;
  for (const ExperimentConfig& c : configs) {
    auto r = run(c);
    rows.insert(rows.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  }
  return rows;
}

}  // namespace lamplighter
