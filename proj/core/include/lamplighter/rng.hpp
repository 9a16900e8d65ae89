#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace lamplighter {

/// Counter-based generator: the i-th output is a fixed mix of (seed, i).
///
/// Output depends only on the seed and the number of draws, so results are
/// identical across platforms and standard libraries. Independent streams
/// come from derive_seed(seed, index) rather than from sharing a generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t next() noexcept;
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept;
  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;
  bool coin(double p) noexcept { return uniform01() < p; }

  template <class T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of the `index`-th child stream of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace lamplighter
