// lamplighter: command line driver for the lamplighter embedding experiments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lamplighter/experiments.hpp"
#include "lamplighter/rng.hpp"
#include "lamplighter/stochastic.hpp"
#include "lamplighter/tsp.hpp"

namespace ll = lamplighter;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string family;  // cycle, or file when --graph is given
  int n = 8;
  int d = 2;
  int k = 0;
  int m = 0;
  std::string graph;
  std::string embedder;
  std::size_t samples = 200;
  std::uint64_t seed = 42;
  std::string pairs = "auto";
  std::size_t molecules = 500;
  std::size_t cap = ll::kDefaultTspCap;
  std::string out;
  std::string format = "csv";
  bool timing = false;
  // tsp
  std::string from = "@0";
  std::string to = "@0";
  // suite
  std::string config;
  std::string preset;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--family", o.family,
                  "path|cycle|grid|torus|diamond|random_tree|random_graph|complete|file");
  app->add_option("--n", o.n, "vertex count, or side length for grid/torus");
  app->add_option("--d", o.d, "dimension for grid/torus/fold");
  app->add_option("--k", o.k, "diamond level, or number of scales for fold");
  app->add_option("--m", o.m, "second side of a rectangular 2-d grid");
  app->add_option("--graph", o.graph, "graph file for --family file");
  app->add_option("--seed", o.seed, "64-bit seed");
  app->add_option("--cap", o.cap, "largest exact TSP instance");
  app->add_option("--out", o.out, "write the report here instead of stdout");
  app->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
}

void add_embedder(CLI::App* app, Options& o) {
  app->add_option("--embedder", o.embedder, "frt|karp|identity_tree (default: by family)");
  app->add_option("--samples", o.samples, "FRT trees");
}

ll::EmbedderKind default_embedder(ll::Family f) {
  if (ll::is_tree_family(f)) return ll::EmbedderKind::IdentityTree;
  return ll::EmbedderKind::Frt;
}

ll::ExperimentConfig to_config(const Options& o, ll::ExperimentKind kind) {
  ll::ExperimentConfig c;
  c.experiment = kind;
  if (o.graph.empty()) {
    c.family = ll::parse_family(o.family.empty() ? "cycle" : o.family);
  } else {
    if (!o.family.empty() && o.family != "file") throw ll::UsageError("--graph needs --family file");
    c.family = ll::Family::File;
  }
  c.params.n = o.n;
  c.params.d = o.d;
  c.params.k = o.k;
  c.params.m = o.m;
  c.params.file = o.graph;
  c.embedder = o.embedder.empty() ? default_embedder(c.family) : ll::parse_embedder(o.embedder);
  c.samples = o.samples;
  c.seed = o.seed;
  c.pairs = ll::PairPolicy::parse(o.pairs);
  c.molecules = o.molecules;
  c.tsp_cap = o.cap;
  c.timing = o.timing;
  c.validate();
  return c;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ll::UsageError("cannot open output file: " + o.out);
  f << text;
}

void print_failures(const std::vector<ll::ReportRow>& rows) {
  for (const auto& r : rows) {
    for (const auto& c : r.checks) {
      if (!c.passed) {
        std::fprintf(stderr, "violation: %s/%s %s: value=%.17g bound=%.17g\n",
                     std::string(ll::to_string(r.config.experiment)).c_str(),
                     std::string(ll::to_string(r.config.family)).c_str(), c.name.c_str(), c.value, c.bound);
      }
    }
  }
}

int run_rows(const Options& o, const std::vector<ll::ReportRow>& rows) {
  emit(o, ll::render(rows, ll::parse_format(o.format)));
  print_failures(rows);
  for (const auto& r : rows) {
    if (!r.passed()) return kExitViolation;
  }
  return kExitOk;
}

/// "1,3,5@2" -> lamps {1,3,5}, position 2; "@0" is the empty configuration at 0.
ll::LamplighterPoint parse_point(const std::string& text, int n) {
  const auto at = text.find('@');
  if (at == std::string::npos) throw ll::UsageError("configuration must look like 'a,b,c@pos': " + text);
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size() || v < 0 || v >= n) throw std::out_of_range(s);
      return v;
    } catch (const std::exception&) {
      throw ll::UsageError("bad vertex '" + s + "' in " + text);
    }
  };
  std::vector<int> lamps;
  std::stringstream ss(text.substr(0, at));
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) lamps.push_back(to_int(item));
  }
  return {ll::make_point_set(std::move(lamps)), to_int(text.substr(at + 1))};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string render_object(const Options& o, const Json& fields) {
  if (o.format == "json") {
    Json doc;
    doc["schema_version"] = ll::kReportSchemaVersion;
    for (const auto& [k, v] : fields.items()) doc[k] = v;
    return doc.dump(2) + "\n";
  }
  std::string header = "schema_version";
  std::string row = std::to_string(ll::kReportSchemaVersion);
  for (const auto& [k, v] : fields.items()) {
    header += "," + k;
    if (v.is_string()) {
      row += "," + csv_field(v.get<std::string>());
    } else if (v.is_number_float()) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
      row += std::string(",") + buf;
    } else {
      row += "," + v.dump();
    }
  }
  return header + "\n" + row + "\n";
}

ll::WeightedGraph build_graph(const Options& o) {
  const ll::ExperimentConfig c = to_config(o, ll::ExperimentKind::Distortion);
  return ll::generate(c.family, c.params, ll::derive_seed(c.seed, 0));
}

int cmd_tsp(const Options& o) {
  const ll::WeightedGraph g = build_graph(o);
  const ll::MetricSpace m = ll::shortest_path_metric(g);
  const ll::LamplighterPoint u = parse_point(o.from, m.size());
  const ll::LamplighterPoint v = parse_point(o.to, m.size());
  const double t = ll::tau(m, u, v, o.cap);
  const double dist = ll::lamplighter_distance(m, u, v, o.cap);
  Json f;
  f["family"] = std::string(ll::to_string(to_config(o, ll::ExperimentKind::Distortion).family));
  f["points"] = m.size();
  f["from"] = o.from;
  f["to"] = o.to;
  f["symmetric_difference"] = ll::symmetric_difference(u.lamps, v.lamps).size();
  f["tau"] = t;
  f["lamplighter_distance"] = dist;
  bool ok = true;
  if (g.unit_weights() && m.size() <= ll::kLamplighterBfsCap) {
    const int bfs = ll::lamplighter_bfs_oracle(g, u, v);
    f["bfs_distance"] = bfs;
    ok = static_cast<double>(bfs) == dist;
    f["status"] = ok ? "pass" : "fail";
  } else {
    f["status"] = "pass";
  }
  emit(o, render_object(o, f));
  if (!ok) std::fprintf(stderr, "violation: lamplighter_distance differs from the BFS oracle\n");
  return ok ? kExitOk : kExitViolation;
}

int cmd_embed(const Options& o) {
  const ll::ExperimentConfig c = to_config(o, ll::ExperimentKind::Distortion);
  const ll::WeightedGraph g = ll::generate(c.family, c.params, ll::derive_seed(c.seed, 0));
  const ll::MetricSpace m = ll::shortest_path_metric(g);
  ll::StochasticEmbedding se = [&] {
    switch (c.embedder) {
      case ll::EmbedderKind::Karp: return ll::karp_cycle_embedding(m.size());
      case ll::EmbedderKind::IdentityTree: return ll::identity_tree_embedding(ll::WeightedTree::from_graph(g, 0));
      case ll::EmbedderKind::Frt: break;
    }
    return ll::frt_ensemble(m, c.samples, ll::derive_seed(c.seed, 1));
  }();
  const auto dom = ll::verify_domination(se, m);
  const ll::StretchReport st = ll::expected_stretch(se, m);
  Json f;
  f["family"] = std::string(ll::to_string(c.family));
  f["points"] = m.size();
  f["embedder"] = std::string(ll::to_string(c.embedder));
  f["samples"] = c.samples;
  f["seed"] = c.seed;
  f["components"] = se.size();
  f["d_measured"] = st.stretch;
  f["stretch_pair"] = "(" + std::to_string(st.x) + "," + std::to_string(st.y) + ")";
  f["domination_violations"] = dom.size();
  f["status"] = dom.empty() ? "pass" : "fail";
  emit(o, render_object(o, f));
  for (const auto& v : dom) {
    std::fprintf(stderr, "violation: component %zu contracts (%d,%d) by %.17g\n", v.component, v.x, v.y, v.deficit);
  }
  return dom.empty() ? kExitOk : kExitViolation;
}

int cmd_suite(const Options& o) {
  if (o.config.empty() == o.preset.empty()) throw ll::UsageError("suite needs exactly one of --config or --preset");
  std::vector<ll::ExperimentConfig> configs;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw ll::UsageError("cannot read suite file: " + o.config);
    std::stringstream buf;
    buf << in.rdbuf();
    configs = ll::parse_suite(buf.str());
  } else {
    configs = ll::preset_suite(o.preset);
  }
  for (auto& c : configs) c.timing = o.timing;
  return run_rows(o, ll::run_suite(configs));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lamplighter embedding experiments"};
  app.require_subcommand(1);
  Options o;

  auto* tsp = app.add_subcommand("tsp", "tau and lamplighter distance between two configurations");
  add_common(tsp, o);
  tsp->add_option("--from", o.from, "configuration 'a,b,c@pos'");
  tsp->add_option("--to", o.to, "configuration 'a,b,c@pos'");

  auto* embed = app.add_subcommand("embed", "build a stochastic tree embedding and report its stretch");
  add_common(embed, o);
  add_embedder(embed, o);

  auto* distortion = app.add_subcommand("distortion", "end-to-end distortion of the lamplighter embedding");
  add_common(distortion, o);
  add_embedder(distortion, o);
  distortion->add_option("--pairs", o.pairs, "auto|exhaustive[:L]|sampled[:count[:symdiff]]|mixed[:L[:count[:symdiff]]]");
  distortion->add_flag("--timing", o.timing, "include wall-clock runtime (breaks byte reproducibility)");

  auto* freespace = app.add_subcommand("freespace", "free-space norm checks on random molecules");
  add_common(freespace, o);
  add_embedder(freespace, o);
  freespace->add_option("--molecules", o.molecules, "random molecules to test");
  freespace->add_flag("--timing", o.timing, "include wall-clock runtime");

  auto* fold = app.add_subcommand("fold", "folding maps and the truncated coarse embedding on Z^d");
  add_common(fold, o);
  fold->add_option("--samples", o.samples, "FRT trees per scale");
  fold->add_option("--pairs", o.pairs, "auto (200 per bucket) or sampled:count");
  fold->add_flag("--timing", o.timing, "include wall-clock runtime");

  auto* suite = app.add_subcommand("suite", "run a batch of experiments");
  suite->add_option("--config", o.config, "suite JSON file");
  suite->add_option("--preset", o.preset, "smoke|regression");
  suite->add_option("--out", o.out, "write the report here instead of stdout");
  suite->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  suite->add_flag("--timing", o.timing, "include wall-clock runtime");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*tsp) return cmd_tsp(o);
    if (*embed) return cmd_embed(o);
    if (*suite) return cmd_suite(o);
    if (*distortion) return run_rows(o, ll::run(to_config(o, ll::ExperimentKind::Distortion)));
    if (*freespace) return run_rows(o, ll::run(to_config(o, ll::ExperimentKind::FreeSpace)));
    if (*fold) return run_rows(o, ll::run(to_config(o, ll::ExperimentKind::Fold)));
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "invariant violation: %s\n", e.what());
    return kExitViolation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitViolation;
  }
  return kExitUsage;
}
