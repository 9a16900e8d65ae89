#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lamplighter {

enum class CoordKind : std::uint8_t {
  Tsp,       // (edge, vertex set) coordinate of the tree travelling-salesman block
  RootPath,  // edge on the root-to-position path
  Lamp,      // indicator coordinate of a lit lamp
  Subtree,   // subtree-mass coordinate of the tree free-space isometry
};

/// Coordinate name inside an l1 direct sum.
///
/// `scope` is the namespace path prepended by scaled(); keys from different
/// components of a direct sum therefore never collide. For Tsp keys `set`
/// holds the canonical sorted vertex set; for the other kinds it is empty.
struct CoordKey {
  std::vector<std::uint32_t> scope;
  CoordKind kind = CoordKind::Lamp;
  int index = 0;
  std::vector<int> set;

  static CoordKey tsp(int edge, std::vector<int> sorted_set);
  static CoordKey root_path(int edge) { return {{}, CoordKind::RootPath, edge, {}}; }
  static CoordKey lamp(int point) { return {{}, CoordKind::Lamp, point, {}}; }
  static CoordKey subtree(int vertex) { return {{}, CoordKind::Subtree, vertex, {}}; }

  std::string to_string() const;

  friend bool operator==(const CoordKey&, const CoordKey&) = default;
  friend auto operator<=>(const CoordKey&, const CoordKey&) = default;
};

/// Finitely supported vector in l1 with canonical (sorted, zero-free) storage.
class SparseVector {
 public:
  using Entry = std::pair<CoordKey, double>;

  SparseVector() = default;
  /// Sums duplicate keys and drops zero entries.
  static SparseVector from_entries(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  double at(const CoordKey& key) const;
  double l1_norm() const;

  /// Copy with every value multiplied by `factor`.
  SparseVector scaled_by(double factor) const;
  /// Copy with `tag` prepended to every key's scope.
  SparseVector scoped(std::uint32_t tag) const;
  /// Concatenation of vectors with disjoint supports, or a sum when keys overlap.
  void add(const SparseVector& other, double factor = 1.0);

 private:
  std::vector<Entry> entries_;
};

/// ||a - b||_1 by a single merge pass.
double l1_distance(const SparseVector& a, const SparseVector& b);

}  // namespace lamplighter
