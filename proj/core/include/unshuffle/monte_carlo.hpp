#pragma once

// Seeded Monte Carlo estimates of the events behind the closed forms in
// prob_oracles, each paired with the matching closed form.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "unshuffle/shuffle_model.hpp"

namespace unshuffle {

enum class ProbEvent {
  /// A uniformly chosen row partitions [N] into exactly {N-set, complement}.
  RowIsNBipartition,
  /// A uniformly chosen row takes exactly two values.
  RowTwoValued,
  /// Two values, but not the N-set bipartition (p_2 - p_N).
  TwoValuedNotN,
  /// L-hat_0 equals the clean loci, given the true N-set.
  L0Exact,
  /// L-hat_1 equals the preimage of the clean loci, given the true N-set.
  L1Exact,
  /// The first-row partition equals the partition by first block.
  PrefixPartitionIdentical,
};

std::string_view event_name(ProbEvent event);
/// Accepts the names above plus the short CLI aliases p_n, p2, gap, l0, l1,
/// prefix. Returns nullopt for anything else.
std::optional<ProbEvent> parse_event(std::string_view name);

struct ProbReport {
  std::string event;
  double closed_form = 0.0;
  double mc_estimate = 0.0;
  /// sqrt(p-hat (1 - p-hat) / trials).
  double mc_stderr = 0.0;
  std::size_t trials = 0;
  std::size_t hits = 0;
  /// |closed - estimate| <= kAgreementSigmas * max(mc_stderr, closed-form
  /// binomial standard error). The second term keeps estimates of 0 or 1
  /// from having a zero-width band.
  bool agrees = false;
  std::uint64_t seed = 0;

  static constexpr double kAgreementSigmas = 3.0;
  static constexpr std::size_t kMinTrials = 100;

  bool operator==(const ProbReport&) const = default;
};

/// Runs `trials` independent corpus draws, trial t seeded with
/// Rng::derive(seed, t). Row and L-set events need a two-block shuffle; the
/// prefix event needs restricted_prefix. The closed form for the prefix
/// event averages C(q,k)k!/q^k over the realized first-block counts k.
/// Throws DomainError for fewer than kMinTrials trials or a mismatched model.
ProbReport monte_carlo(ProbEvent event, const ModelParams& params, std::size_t trials,
                       std::uint64_t seed);

/// Closed form of a two-block row or L-set event under the exact counts of
/// `params`.
double closed_form(ProbEvent event, const ModelParams& params);

}  // namespace unshuffle
