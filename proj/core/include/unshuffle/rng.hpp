#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace unshuffle {

/// Seedable generator with a platform-independent output stream.
///
/// Backed by std::mt19937_64, whose raw output sequence is fixed by the
/// standard. Bounded draws use rejection sampling on the raw 64-bit words
/// instead of std::uniform_int_distribution, whose algorithm is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform on [0, 1) with 53 random bits.
  double unit();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    shuffle(std::span<T>(items));
  }

  /// Uniform k-subset of [0, population), returned sorted ascending.
  std::vector<std::size_t> sample(std::size_t population, std::size_t k);

  /// Seed of an independent stream, e.g. one per Monte Carlo trial.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

}  // namespace unshuffle
