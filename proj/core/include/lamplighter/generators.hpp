#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "lamplighter/metric.hpp"
#include "lamplighter/tree.hpp"

namespace lamplighter {

enum class Family { Path, Cycle, Grid, Torus, Diamond, RandomTree, RandomGraph, Complete, File };

std::string_view to_string(Family f);
/// Throws std::invalid_argument for unknown names.
Family parse_family(std::string_view name);
bool is_tree_family(Family f);

WeightedGraph path_graph(int n);
WeightedGraph cycle_graph(int n);
/// Grid with the given side lengths (product of paths).
WeightedGraph grid_graph(const std::vector<int>& sides);
/// Product of cycles; sides of length <= 2 are not wrapped.
WeightedGraph torus_graph(const std::vector<int>& sides);
/// D_0 is one edge; D_k replaces every edge of D_{k-1} by a 4-cycle. Level <= 5.
WeightedGraph diamond_graph(int level);
WeightedGraph complete_graph(int n);
/// Uniform random recursive tree (vertex i attaches to a uniform earlier vertex, then relabelled).
WeightedGraph random_tree_graph(int n, std::uint64_t seed);
/// Random tree plus every other pair independently with probability `extra_p`.
WeightedGraph random_graph(int n, double extra_p, std::uint64_t seed);
/// Random tree with weights drawn uniformly from the integers 1..max_weight.
WeightedTree random_weighted_tree(int n, std::uint64_t seed, int max_weight = 9);

struct FamilyParams {
  int n = 0;  // vertex count, or side length for grid/torus
  int d = 2;  // dimension for grid/torus
  int k = 0;  // level for diamond
  int m = 0;  // second side for a rectangular 2-d grid/torus (0: square)
  std::string file;
};

/// Canonical unit-weight graph of a family. Throws std::invalid_argument on bad parameters.
WeightedGraph generate(Family family, const FamilyParams& params, std::uint64_t seed);

/// Text format: first line "n m", then m lines "u v w".
WeightedGraph parse_graph(std::istream& in);
WeightedGraph read_graph_file(const std::string& path);

}  // namespace lamplighter
