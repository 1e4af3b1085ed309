#include "unshuffle/unshuffle2.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "unshuffle/error.hpp"
#include "unshuffle/partition.hpp"

namespace unshuffle {

PartialTuple PartialTuple::from_values(std::span<const Symbol> values) {
  PartialTuple out(values.size());
  for (std::size_t l = 0; l < values.size(); ++l) out[l] = values[l];
  return out;
}

std::size_t PartialTuple::defined_count() const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); }));
}

std::vector<std::size_t> estimate_n(const Corpus& corpus) {
  if (corpus.columns() < 2) throw NotIdentifiableError("need at least two columns");

  struct Tally {
    std::size_t count = 0;
    std::size_t first_row = 0;
  };
  std::map<std::vector<std::size_t>, Tally> tallies;
  for (const auto& [row, partition] : two_valued_rows(corpus)) {
    // parts[0] holds column 0, so parts[1] is the canonical side.
    auto [it, fresh] = tallies.try_emplace(partition.parts[1], Tally{0, row});
    ++it->second.count;
  }
  if (tallies.empty()) {
    throw NotIdentifiableError("no row takes exactly two values; no shift detected");
  }
  auto best = tallies.begin();
  for (auto it = tallies.begin(); it != tallies.end(); ++it) {
    const auto& [c, r] = it->second;
    if (c > best->second.count || (c == best->second.count && r < best->second.first_row)) {
      best = it;
    }
  }
  return best->first;
}

namespace {

std::vector<bool> membership(std::span<const std::size_t> subset, std::size_t columns) {
  std::vector<bool> in(columns, false);
  for (std::size_t n : subset) {
    if (n >= columns) throw StructuralError("column index out of range in n_hat");
    in[n] = true;
  }
  return in;
}

// Unique value of the row over the selected columns, if there is one.
std::optional<Symbol> constant_value(const Corpus& corpus, std::size_t row,
                                     const std::vector<bool>& in, bool side) {
  std::optional<Symbol> value;
  for (std::size_t n = 0; n < corpus.columns(); ++n) {
    if (in[n] != side) continue;
    const Symbol v = corpus.at(row, n);
    if (!value) {
      value = v;
    } else if (*value != v) {
      return std::nullopt;
    }
  }
  return value;
}

}  // namespace

LSets estimate_l_sets(const Corpus& corpus, std::span<const std::size_t> n_hat) {
  const auto in = membership(n_hat, corpus.columns());
  LSets out;
  for (std::size_t l = 0; l < corpus.rows(); ++l) {
    if (constant_value(corpus, l, in, false)) out.unshifted.push_back(l);
    if (constant_value(corpus, l, in, true)) out.shifted.push_back(l);
  }
  return out;
}

std::pair<PartialTuple, PartialTuple> partial_templates(const Corpus& corpus,
                                                        std::span<const std::size_t> n_hat,
                                                        const LSets& l_sets) {
  const auto in = membership(n_hat, corpus.columns());
  PartialTuple a0(corpus.rows());
  PartialTuple a1(corpus.rows());
  for (std::size_t l : l_sets.unshifted) a0[l] = constant_value(corpus, l, in, false);
  for (std::size_t l : l_sets.shifted) a1[l] = constant_value(corpus, l, in, true);
  return {std::move(a0), std::move(a1)};
}

CyclicAlignment align_cyclic(const PartialTuple& a0, const PartialTuple& a1) {
  if (a0.size() != a1.size()) {
    throw StructuralError("align_cyclic: partial tuples of lengths " + std::to_string(a0.size()) +
                          " and " + std::to_string(a1.size()));
  }
  const std::size_t length = a0.size();
  CyclicAlignment best;
  for (std::size_t s = 0; s < length; ++s) {
    std::size_t score = 0;
    for (std::size_t l = 0; l < length; ++l) {
      if (PartialTuple::matches(a0[(l + s) % length], a1[l])) ++score;
    }
    if (score > best.score) best = {s, score};
  }
  return best;
}

TwoUnshuffleResult unshuffle2_given(const Corpus& corpus, std::vector<std::size_t> n_hat) {
  if (n_hat.empty() || n_hat.size() >= corpus.columns()) {
    throw StructuralError("n_hat must be a nonempty proper subset of the columns");
  }
  std::sort(n_hat.begin(), n_hat.end());

  TwoUnshuffleResult out;
  const LSets l_sets = estimate_l_sets(corpus, n_hat);
  const auto [a0, a1] = partial_templates(corpus, n_hat, l_sets);
  const CyclicAlignment alignment = align_cyclic(a0, a1);

  const std::size_t length = corpus.rows();
  out.l1_hat = alignment.shift;
  out.l2_hat = (length - alignment.shift) % length;
  out.score = alignment.score;
  out.pi_hat = Permutation::cyclic_shift(length, alignment.shift);
  out.l0_hat = l_sets.unshifted;
  out.l1set_hat = l_sets.shifted;

  std::vector<bool> conserved(length, false);
  for (std::size_t l : l_sets.unshifted) conserved[l] = true;
  for (std::size_t l = 0; l < length; ++l) {
    if (!conserved[l]) out.noise_loci_hat.push_back(l);
  }

  const Permutation identity = Permutation::identity(length);
  const Permutation undo = invert(out.pi_hat);
  out.column_perms.assign(corpus.columns(), identity);
  for (std::size_t n : n_hat) out.column_perms[n] = undo;
  out.aligned = apply_unshuffle(corpus, out.column_perms);
  out.n_hat = std::move(n_hat);
  return out;
}

TwoUnshuffleResult unshuffle2(const Corpus& corpus) {
  return unshuffle2_given(corpus, estimate_n(corpus));
}

}  // namespace unshuffle
