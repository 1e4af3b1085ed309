#pragma once

// Permutations in one-line form, block structures, and the operad
// composition from which block and coherent block permutations are built.
//
// Storage is 0-based throughout; `Permutation::from_one_line` and
// `Permutation::one_line` convert to and from the 1-based notation used in
// reports and tests.
//
// Action convention (fixed everywhere in the library):
//
//   apply(p, v)[a] == v[p(a)]
//
// i.e. position a of the output takes the value found at position p(a) of
// the input. As a matrix this is rho(p)_{ab} = [b == p(a)] acting on column
// vectors. `compose(p, q)` is ordinary function composition p o q, which
// makes apply(compose(p, q), v) == apply(q, apply(p, v)).

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "unshuffle/error.hpp"

namespace unshuffle {

class Permutation {
 public:
  using Index = std::uint32_t;

  Permutation() = default;

  static Permutation identity(std::size_t n);

  /// Cyclic shift on [n]: l -> (l + shift) mod n.
  static Permutation cyclic_shift(std::size_t n, std::size_t shift);

  /// Builds from 0-based images; throws StructuralError unless bijective.
  static Permutation from_images(std::vector<Index> images);

  /// Builds from 1-based one-line notation (sigma(1), ..., sigma(n)).
  static Permutation from_one_line(std::span<const std::int64_t> one_line);
  static Permutation from_one_line(std::initializer_list<std::int64_t> one_line);

  std::size_t size() const noexcept { return images_.size(); }
  bool empty() const noexcept { return images_.empty(); }

  /// 0-based image of a 0-based point.
  Index operator()(std::size_t a) const { return images_[a]; }

  std::span<const Index> images() const noexcept { return images_; }

  /// 1-based one-line form.
  std::vector<std::int64_t> one_line() const;

  bool is_identity() const noexcept;

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<Index> images) : images_(std::move(images)) {}

  std::vector<Index> images_;
};

Permutation invert(const Permutation& p);

/// p o q, so that apply(compose(p, q), v) == apply(q, apply(p, v)).
Permutation compose(const Permutation& p, const Permutation& q);

template <typename T>
std::vector<T> apply(const Permutation& p, std::span<const T> v) {
  if (p.size() != v.size()) {
    throw StructuralError("apply: permutation of size " + std::to_string(p.size()) +
                          " applied to a sequence of length " + std::to_string(v.size()));
  }
  std::vector<T> out(v.size());
  for (std::size_t a = 0; a < v.size(); ++a) out[a] = v[p(a)];
  return out;
}

template <typename T>
std::vector<T> apply(const Permutation& p, const std::vector<T>& v) {
  return apply(p, std::span<const T>(v));
}

/// Ordered positive block lengths (L_1, ..., L_M).
class BlockStructure {
 public:
  BlockStructure() = default;
  explicit BlockStructure(std::vector<std::size_t> lengths);
  BlockStructure(std::initializer_list<std::size_t> lengths)
      : BlockStructure(std::vector<std::size_t>(lengths)) {}

  std::size_t count() const noexcept { return lengths_.size(); }
  std::size_t total() const noexcept { return total_; }
  std::size_t length(std::size_t m) const { return lengths_[m]; }
  std::span<const std::size_t> lengths() const noexcept { return lengths_; }

  /// 0-based first position of each block (the prefix set, shifted by one).
  std::vector<std::size_t> starts() const;
  /// 0-based one-past-last position of each block.
  std::vector<std::size_t> ends() const;

  /// Lengths reordered as (L_{sigma(1)}, ..., L_{sigma(M)}).
  BlockStructure permuted(const Permutation& sigma) const;

  friend bool operator==(const BlockStructure&, const BlockStructure&) = default;

 private:
  std::vector<std::size_t> lengths_;
  std::size_t total_ = 0;
};

/// sigma o (tau_1, ..., tau_M): block n of the input, of size |tau_n|, is
/// permuted internally by tau_n and moved to the sigma(n)-th slot of the
/// output, where slots are laid out in the order sigma^{-1}(1), ...,
/// sigma^{-1}(M).
Permutation operad_compose(const Permutation& sigma, std::span<const Permutation> taus);

/// sigma_{L_1,...,L_M} = sigma o (1_{L_1}, ..., 1_{L_M}).
Permutation block_permutation(const Permutation& sigma, const BlockStructure& blocks);

/// sigma^coherent_{L_1,...,L_M} = sigma o (1_{L_sigma(1)}, ..., 1_{L_sigma(M)}).
/// Maps block intervals of [L] onto block intervals; a column generated by
/// apply(coherent_block_permutation(sigma, blocks), x) is the concatenation
/// of template blocks sigma(1), sigma(2), ..., sigma(M).
Permutation coherent_block_permutation(const Permutation& sigma, const BlockStructure& blocks);

/// All permutations of [m] in lexicographic order of their one-line form.
std::vector<Permutation> all_permutations(std::size_t m);

}  // namespace unshuffle
