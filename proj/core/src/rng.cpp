#include "unshuffle/rng.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "unshuffle/error.hpp"

namespace unshuffle {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("Rng::below: bound must be positive");
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  // Largest multiple of bound that fits; draws at or above it are rejected.
  const std::uint64_t limit = kMax - (kMax % bound + 1) % bound;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r > limit);
  return r % bound;
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::vector<std::size_t> Rng::sample(std::size_t population, std::size_t k) {
  if (k > population) throw DomainError("Rng::sample: k exceeds population");
  std::vector<std::size_t> pool(population);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  // Partial Fisher-Yates: the first k slots end up a uniform k-subset.
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + below(population - i)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace unshuffle
