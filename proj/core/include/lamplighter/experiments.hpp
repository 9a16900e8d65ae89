#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lamplighter/generators.hpp"

namespace lamplighter {

inline constexpr int kReportSchemaVersion = 1;
/// Slack allowed on every "<= bound" distortion check.
inline constexpr double kBoundSlack = 1e-6;

/// Invalid experiment configuration; the CLI maps it to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ExperimentKind { Distortion, FreeSpace, Fold };
enum class EmbedderKind { Frt, Karp, IdentityTree };
enum class ReportFormat { Csv, Json };

std::string_view to_string(ExperimentKind k);
std::string_view to_string(EmbedderKind k);
ExperimentKind parse_experiment(std::string_view name);
EmbedderKind parse_embedder(std::string_view name);
ReportFormat parse_format(std::string_view name);

/// Which pairs of lamplighter configurations a distortion run evaluates.
///
/// Text forms: "auto", "exhaustive[:max_lamps]", "sampled[:count[:max_symdiff]]",
/// "mixed[:max_lamps[:count[:max_symdiff]]]". "auto" is mixed:2:1000:12 when the
/// exhaustive part stays below kAutoExhaustivePairCap pairs, and sampled:1000:12 otherwise.
struct PairPolicy {
  enum class Kind { Auto, Exhaustive, Sampled, Mixed };
  Kind kind = Kind::Auto;
  int max_lamps = 2;
  std::size_t count = 1000;
  std::size_t max_symdiff = 12;

  static PairPolicy parse(std::string_view text);
  std::string to_string() const;
};

/// Largest exhaustive pair set an explicit policy may request.
inline constexpr std::size_t kExhaustivePairCap = 5'000'000;
/// Largest exhaustive pair set "auto" will pick on its own.
inline constexpr std::size_t kAutoExhaustivePairCap = 100'000;

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Distortion;
  Family family = Family::Cycle;
  FamilyParams params{};
  EmbedderKind embedder = EmbedderKind::Frt;
  std::size_t samples = 200;  // FRT trees (per scale for fold runs)
  std::uint64_t seed = 42;
  PairPolicy pairs{};
  std::size_t molecules = 500;  // free-space runs
  std::size_t tsp_cap = 20;
  bool timing = false;  // wall-clock fields break byte-for-byte reproducibility; off by default

  /// Throws UsageError on an inconsistent configuration.
  void validate() const;
};

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;
};

struct ReportRow {
  ExperimentConfig config;
  std::string resolved_pairs;
  int points = 0;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, std::string>> witnesses;
  std::vector<Check> checks;
  std::optional<double> runtime_ms;

  bool passed() const;
  std::optional<double> metric(std::string_view name) const;
};

std::vector<ReportRow> run(const ExperimentConfig& config);

std::string csv_header();
std::string to_csv(const std::vector<ReportRow>& rows);
std::string to_json(const std::vector<ReportRow>& rows);
std::string render(const std::vector<ReportRow>& rows, ReportFormat format);

/// Parses a suite file: {"experiments": [ {config fields...}, ... ]}.
std::vector<ExperimentConfig> parse_suite(const std::string& json_text);
/// Built-in suites: "smoke" and "regression".
std::vector<ExperimentConfig> preset_suite(std::string_view name);
std::vector<ReportRow> run_suite(const std::vector<ExperimentConfig>& configs);

}  // namespace lamplighter
