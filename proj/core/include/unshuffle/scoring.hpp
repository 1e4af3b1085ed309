#pragma once

// Comparison of solver output against a generator's ground truth.

#include <optional>
#include <vector>

#include "unshuffle/permutation.hpp"
#include "unshuffle/shuffle_model.hpp"
#include "unshuffle/unshuffle2.hpp"
#include "unshuffle/unshuffle_m.hpp"

namespace unshuffle {

/// What a correct two-block solver reports in its gauge (column 0 never in
/// n_hat): the shifted set, the shift, and the noise loci as seen by the
/// columns outside n_hat.
struct TwoBlockExpectation {
  std::vector<std::size_t> n_set;
  std::size_t l1 = 0;
  std::vector<std::size_t> noise_loci;
};

/// nullopt when every column or no column is shifted.
std::optional<TwoBlockExpectation> two_block_expectation(const GroundTruth& truth);

/// n_hat, the shift and the noise loci all match the expectation.
bool exact_two_recovery(const TwoUnshuffleResult& result, const GroundTruth& truth);

/// The common frame sigma* of a perfect M-block reconstruction: every
/// column is rearranged by the same coherent(sigma*) of the template and the
/// recovered lengths are (L_{sigma*(1)}, ..., L_{sigma*(M)}). nullopt when
/// the result is not a perfect reconstruction.
std::optional<Permutation> reconstruction_frame(const MUnshuffleResult& result,
                                                const GroundTruth& truth);

inline bool perfect_reconstruction(const MUnshuffleResult& result, const GroundTruth& truth) {
  return reconstruction_frame(result, truth).has_value();
}

}  // namespace unshuffle
