#pragma once

// Two-block unshuffling: find the set of cyclically shifted columns, the
// noise loci, and the shift, then align.
//
// Which side of the column bipartition counts as "shifted" cannot be told
// from the data alone (shifting one side by L_1 is shifting the other by
// L_2). Estimates are canonicalized so that column 0 is never in n_hat.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "unshuffle/corpus.hpp"
#include "unshuffle/permutation.hpp"

namespace unshuffle {

/// A tuple over Z/qZ with undefined entries. Undefined never matches
/// anything, itself included.
class PartialTuple {
 public:
  PartialTuple() = default;
  explicit PartialTuple(std::size_t length) : values_(length) {}
  explicit PartialTuple(std::vector<std::optional<Symbol>> values) : values_(std::move(values)) {}

  static PartialTuple from_values(std::span<const Symbol> values);

  std::size_t size() const noexcept { return values_.size(); }
  const std::optional<Symbol>& operator[](std::size_t l) const { return values_[l]; }
  std::optional<Symbol>& operator[](std::size_t l) { return values_[l]; }

  std::size_t defined_count() const;

  /// Value-level comparison with the undefined rule applied.
  static bool matches(const std::optional<Symbol>& a, const std::optional<Symbol>& b) {
    return a.has_value() && b.has_value() && *a == *b;
  }
  static bool matches(const std::optional<Symbol>& a, Symbol b) {
    return a.has_value() && *a == b;
  }

 private:
  std::vector<std::optional<Symbol>> values_;
};

struct LSets {
  /// Rows constant over the columns outside n_hat.
  std::vector<std::size_t> unshifted;
  /// Rows constant over the columns in n_hat.
  std::vector<std::size_t> shifted;
};

struct CyclicAlignment {
  std::size_t shift = 0;
  std::size_t score = 0;
};

struct TwoUnshuffleResult {
  std::vector<std::size_t> n_hat;
  /// Estimated L_1 (the shift applied to columns in n_hat) and L - L_1.
  std::size_t l1_hat = 0;
  std::size_t l2_hat = 0;
  Permutation pi_hat;
  std::vector<std::size_t> l0_hat;
  std::vector<std::size_t> l1set_hat;
  /// [L] minus l0_hat: the estimated noise loci in the unshifted frame.
  std::vector<std::size_t> noise_loci_hat;
  /// Per-column unshuffle: invert(pi_hat) on n_hat, identity elsewhere.
  std::vector<Permutation> column_perms;
  Corpus aligned;
  std::size_t score = 0;
};

/// Most frequent bipartition among two-valued rows (ties: earliest row),
/// returned as the side not containing column 0. Throws
/// NotIdentifiableError when no row takes exactly two values.
std::vector<std::size_t> estimate_n(const Corpus& corpus);

LSets estimate_l_sets(const Corpus& corpus, std::span<const std::size_t> n_hat);

std::pair<PartialTuple, PartialTuple> partial_templates(const Corpus& corpus,
                                                        std::span<const std::size_t> n_hat,
                                                        const LSets& l_sets);

/// Shift s in [0, L) maximizing |{l : a0[(l + s) mod L] == a1[l]}|; ties go
/// to the smallest shift.
CyclicAlignment align_cyclic(const PartialTuple& a0, const PartialTuple& a1);

/// Everything after estimate_n, for a caller-supplied n_hat.
TwoUnshuffleResult unshuffle2_given(const Corpus& corpus, std::vector<std::size_t> n_hat);

TwoUnshuffleResult unshuffle2(const Corpus& corpus);

}  // namespace unshuffle
