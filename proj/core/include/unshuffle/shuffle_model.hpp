#pragma once

// Generative model for shuffled corpora.
//
// A template x in (Z/qZ)^L is split into blocks (L_1, ..., L_M). A fixed set
// of noise loci is drawn once; every column n then receives fresh uniform
// noise on those loci and is rearranged by the coherent block permutation of
// its assigned sigma_n in S_M:
//
//   A[l][n] = (x + xi_n)[coherent(sigma_n)(l)]
//
// so column n is the concatenation of template blocks sigma_n(1), ...,
// sigma_n(M). With M = 2 and sigma = (2,1) this is the cyclic shift by L_1.
//
// RNG stream order: template (L draws, then redraws of the prefix positions
// until distinct when requested), noise loci, column permutations, then the
// noise values column by column over the sorted loci.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "unshuffle/corpus.hpp"
#include "unshuffle/permutation.hpp"
#include "unshuffle/rng.hpp"

namespace unshuffle {

/// ceil(fraction * total) with a small guard against binary rounding
/// (0.3 * 80 must give 24, not 25).
std::size_t count_from_fraction(double fraction, std::size_t total);

/// Two blocks; `shifted` columns receive (2,1), the rest the identity.
struct TwoBlockShuffle {
  std::size_t shifted = 0;
};

/// Exact multiplicity per permutation; multiplicities must sum to N.
struct ExplicitShuffle {
  std::vector<std::pair<Permutation, std::size_t>> counts;
};

/// Distinct permutations drawn uniformly from S_M, one per multiplicity.
struct RandomDistinctShuffle {
  std::vector<std::size_t> multiplicities;
};

/// Every permutation of S_M on exactly one column (requires N = M!).
struct AllPermutationsShuffle {};

using ShuffleSpec =
    std::variant<TwoBlockShuffle, ExplicitShuffle, RandomDistinctShuffle, AllPermutationsShuffle>;

struct ModelParams {
  std::uint64_t q = 2;
  BlockStructure blocks;
  std::size_t columns = 0;
  /// Number of noise loci |L|; see count_from_fraction for lambda.
  std::size_t noise_count = 0;
  ShuffleSpec shuffle = TwoBlockShuffle{};
  /// Noise avoids block starts.
  bool restricted_prefix = false;
  /// Template values at the block starts are pairwise distinct. Implies
  /// nothing about noise; combine with restricted_prefix for the
  /// distinguished-prefix problem.
  bool distinguished_prefix = false;
  std::uint64_t seed = 0;

  /// Throws InfeasibleParametersError / StructuralError on invalid params.
  void validate() const;
};

/// Convenience for the two-block setting with fractions lambda, nu.
ModelParams two_block_params(std::uint64_t q, std::size_t first_length,
                             std::size_t second_length, std::size_t columns, double lambda,
                             double nu, std::uint64_t seed);

struct GroundTruth {
  BlockStructure blocks;
  std::vector<Symbol> x;
  /// Sorted 0-based noise loci.
  std::vector<std::size_t> noise_loci;
  /// sigma_n in S_M for each column.
  std::vector<Permutation> column_perms;

  /// Coherent block permutation acting on column n (a permutation of [L]).
  Permutation coherent(std::size_t n) const;

  /// Columns whose sigma equals `sigma`.
  std::vector<std::size_t> columns_with(const Permutation& sigma) const;

  /// Two-block convenience: columns carrying (2,1).
  std::vector<std::size_t> shifted_columns() const;

  std::vector<bool> noise_mask() const;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct GeneratedCorpus {
  Corpus corpus;
  GroundTruth truth;
};

GroundTruth sample_ground_truth(const ModelParams& params, Rng& rng);

/// Draws the template, loci and column permutations, then the noise.
GeneratedCorpus generate(const ModelParams& params, Rng& rng);

/// Same, seeding a fresh generator from params.seed.
GeneratedCorpus generate(const ModelParams& params);

/// The corpus with every column rearranged into template order: column n
/// becomes x + xi_n. Useful for scoring recovery.
Corpus unshuffled_reference(const Corpus& corpus, const GroundTruth& truth);

}  // namespace unshuffle
