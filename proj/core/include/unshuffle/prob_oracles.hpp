#pragma once

// Closed forms for the two-block row-partition probabilities, the noise-set
// recovery probabilities, and the prefix-collision probability.
//
// Exponents such as N*nu are real numbers in the formulas; passing exact
// counts (|N-set|, N - |N-set|, |L|) makes the closed forms describe the
// generator's experiment exactly.

#include <cstddef>
#include <cstdint>

namespace unshuffle {

/// Joint membership weights of a row l and its shifted partner pi(l) in the
/// noise set. `none` is P(l, pi(l) not noisy), `partner_only` is
/// P(l clean, pi(l) noisy), `row_only` the reverse, `both` both noisy.
struct LociWeights {
  double none = 1.0;
  double partner_only = 0.0;
  double row_only = 0.0;
  double both = 0.0;

  /// Independent membership with probability lambda each.
  static LociWeights independent(double lambda);

  /// A uniformly random k-subset of [L]: hypergeometric pair weights.
  static LociWeights fixed_count(std::size_t noisy, std::size_t length);
};

/// Exponent parameters of the two-block lemmas.
struct TwoBlockCounts {
  std::uint64_t q = 2;
  /// N * nu-bar and N * nu: the unshifted and shifted column counts.
  double unshifted = 0.0;
  double shifted = 0.0;
  LociWeights weights;
};

/// P(row takes exactly two values with inverse images N-set and complement).
double p_n_closed(const TwoBlockCounts& counts);
/// Paper-form overload: weights independent in lambda, exponents N*nu.
double p_n_closed(std::uint64_t q, std::size_t columns, double lambda, double nu);

/// P(row takes exactly two values).
double p2_closed(const TwoBlockCounts& counts);
double p2_closed(std::uint64_t q, std::size_t columns, double lambda, double nu);

/// (q/2)^{-N min(nu, 1 - nu)}; DomainError for q <= 2.
double gap_decay(std::uint64_t q, std::size_t columns, double nu);

struct LSetProbabilities {
  double unshifted = 1.0;
  double shifted = 1.0;
};

/// P(L-hat_0 == [L] \ L) and P(L-hat_1 == pi^{-1}([L] \ L)) given the true
/// N-set: (1 - q^{1 - N nu-bar})^{L lambda} and (1 - q^{1 - N nu})^{L lambda}.
LSetProbabilities l_sets_exact_prob(std::uint64_t q, std::size_t columns, std::size_t length,
                                    double lambda, double nu);
/// Exact-count form: exponents unshifted/shifted column counts, power |L|.
LSetProbabilities l_sets_exact_prob_counts(std::uint64_t q, double unshifted, double shifted,
                                           double noisy);

struct PrefixPartitionProbability {
  /// C(q, k) k! / q^k.
  double exact = 0.0;
  /// e^{-k^2 / 2q}.
  double approximation = 0.0;
};

/// Probability that k realized block-start values are pairwise distinct.
PrefixPartitionProbability prefix_partition_prob(std::uint64_t q, std::size_t k);

/// Stirling number of the second kind; SizeLimitError on uint64 overflow.
std::uint64_t stirling2(std::size_t r, std::size_t s);

/// P(r uniform draws over Z/qZ take exactly s distinct values)
/// = S(r, s) C(q, s) s! / q^r.
double value_count_prob(std::uint64_t q, std::size_t r, std::size_t s);

}  // namespace unshuffle
