#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lamplighter/metric.hpp"
#include "lamplighter/sparse_vector.hpp"
#include "lamplighter/stochastic.hpp"
#include "lamplighter/tsp.hpp"

namespace lamplighter {

/// Image (f(A), f(x)) of a configuration under a tree embedding.
LamplighterPoint lift_point(const TreeEmbedding& emb, const LamplighterPoint& p);

/// l1 image of La(X): component i contributes p_i * g_i(lift_i(p)) under scope i,
/// followed by the lamp indicator block 1_A.
SparseVector embed_lamplighter_l1(const StochasticEmbedding& se, const LamplighterPoint& p);

/// Travelling-salesman part only (no lamp block): the l1 image of Ts(X).
SparseVector embed_ts_l1(const StochasticEmbedding& se, const LamplighterPoint& p);

/// ||embed_lamplighter_l1(u) - embed_lamplighter_l1(v)||_1, computed component by component.
double pipeline_l1_distance(const StochasticEmbedding& se, const LamplighterPoint& u,
                            const LamplighterPoint& v);

/// Points plus index pairs into them.
struct PairSample {
  std::vector<LamplighterPoint> points;
  std::vector<IndexPair> pairs;
};

/// Every configuration over n points with at most `max_lamps` lamps, and all
/// unordered pairs of distinct configurations.
PairSample exhaustive_pairs(int n, int max_lamps);

/// `count` random pairs over n points with |A xor B| <= max_symdiff.
PairSample sampled_pairs(int n, std::size_t count, std::size_t max_symdiff, std::uint64_t seed);

/// Appends the pairs (and points) of `extra` to `into`.
void append_sample(PairSample& into, const PairSample& extra);

struct PipelineReport {
  DistortionReport lamplighter;  // embed_lamplighter_l1 against lamplighter_distance
  DistortionReport ts;           // embed_ts_l1 against tau, over pairs with tau > 0
  std::size_t tau_zero_pairs = 0;
  /// Pairs with tau == 0 whose Ts images differ (should stay 0).
  std::size_t tau_zero_mismatches = 0;
};

/// Distortion of the pipeline on `sample`; ground truth from tsp_exact on `m`.
PipelineReport pipeline_distortion(const StochasticEmbedding& se, const MetricSpace& m,
                                   const PairSample& sample, std::size_t cap = kDefaultTspCap);

struct LiftingReport {
  std::size_t pairs_checked = 0;
  std::size_t domination_violations = 0;  // tau_{Y_i}(lift u, lift v) < tau_X(u, v)
  std::size_t average_violations = 0;     // sum_i p_i tau_{Y_i} > D tau_X
  double worst_average_ratio = 0.0;       // max sum_i p_i tau_{Y_i} / tau_X
  double min_domination_ratio = 0.0;      // min_i tau_{Y_i} / tau_X
};

/// Checks the lifted domination and averaged-stretch inequalities on every pair,
/// with tree-side values from tsp_tree and ground values from tsp_exact.
LiftingReport verify_lifting(const StochasticEmbedding& se, const MetricSpace& m,
                             const PairSample& sample, double stretch_bound,
                             std::size_t cap = kDefaultTspCap);

}  // namespace lamplighter
