#include "unshuffle/scoring.hpp"

#include <algorithm>

namespace unshuffle {

std::optional<TwoBlockExpectation> two_block_expectation(const GroundTruth& truth) {
  if (truth.blocks.count() != 2) return std::nullopt;
  const std::size_t columns = truth.column_perms.size();
  const std::vector<std::size_t> shifted = truth.shifted_columns();
  if (shifted.empty() || shifted.size() == columns) return std::nullopt;

  TwoBlockExpectation out;
  const bool flipped = shifted.front() == 0;
  if (!flipped) {
    out.n_set = shifted;
    out.l1 = truth.blocks.length(0);
    out.noise_loci = truth.noise_loci;
    return out;
  }
  std::vector<bool> in_shifted(columns, false);
  for (std::size_t n : shifted) in_shifted[n] = true;
  for (std::size_t n = 0; n < columns; ++n) {
    if (!in_shifted[n]) out.n_set.push_back(n);
  }
  out.l1 = truth.blocks.length(1);
  const Permutation pi = truth.coherent(shifted.front());
  const auto noisy = truth.noise_mask();
  for (std::size_t l = 0; l < noisy.size(); ++l) {
    if (noisy[pi(l)]) out.noise_loci.push_back(l);
  }
  return out;
}

bool exact_two_recovery(const TwoUnshuffleResult& result, const GroundTruth& truth) {
  const auto want = two_block_expectation(truth);
  return want && result.n_hat == want->n_set && result.l1_hat == want->l1 &&
         result.noise_loci_hat == want->noise_loci;
}

std::optional<Permutation> reconstruction_frame(const MUnshuffleResult& result,
                                                const GroundTruth& truth) {
  const std::size_t columns = truth.column_perms.size();
  if (!result.converged || result.column_perms.size() != columns || columns == 0) {
    return std::nullopt;
  }
  if (result.lengths_hat.count() != truth.blocks.count() ||
      result.lengths_hat.total() != truth.blocks.total()) {
    return std::nullopt;
  }

  // Column n of the output is apply(compose(coherent_n, P_n), x + xi_n).
  const Permutation frame = compose(truth.coherent(0), result.column_perms[0]);
  for (std::size_t n = 1; n < columns; ++n) {
    if (compose(truth.coherent(n), result.column_perms[n]) != frame) return std::nullopt;
  }

  const auto template_starts = truth.blocks.starts();
  const auto output_starts = result.lengths_hat.starts();
  std::vector<Permutation::Index> sigma;
  for (std::size_t s : output_starts) {
    const auto it = std::find(template_starts.begin(), template_starts.end(), frame(s));
    if (it == template_starts.end()) return std::nullopt;
    sigma.push_back(static_cast<Permutation::Index>(it - template_starts.begin()));
  }
  std::vector<Permutation::Index> sorted = sigma;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;

  Permutation star = Permutation::from_images(std::move(sigma));
  if (coherent_block_permutation(star, truth.blocks) != frame) return std::nullopt;
  if (!(truth.blocks.permuted(star) == result.lengths_hat)) return std::nullopt;
  return star;
}

}  // namespace unshuffle
