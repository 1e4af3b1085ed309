#include "unshuffle/monte_carlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "unshuffle/error.hpp"
#include "unshuffle/partition.hpp"
#include "unshuffle/prob_oracles.hpp"
#include "unshuffle/rng.hpp"
#include "unshuffle/unshuffle2.hpp"

namespace unshuffle {

namespace {

struct EventName {
  ProbEvent event;
  std::string_view name;
  std::string_view alias;
};

constexpr std::array<EventName, 6> kEventNames{{
    {ProbEvent::RowIsNBipartition, "row_is_n_bipartition", "p_n"},
    {ProbEvent::RowTwoValued, "row_two_valued", "p2"},
    {ProbEvent::TwoValuedNotN, "two_valued_not_n", "gap"},
    {ProbEvent::L0Exact, "l0_exact", "l0"},
    {ProbEvent::L1Exact, "l1_exact", "l1"},
    {ProbEvent::PrefixPartitionIdentical, "prefix_partition_identical", "prefix"},
}};

bool is_two_block_event(ProbEvent e) { return e != ProbEvent::PrefixPartitionIdentical; }

std::size_t shifted_count(const ModelParams& params) {
  const auto* two = std::get_if<TwoBlockShuffle>(&params.shuffle);
  if (!two) throw DomainError("this event needs a two-block shuffle");
  if (two->shifted == 0 || two->shifted >= params.columns) {
    throw DomainError("this event needs both shifted and unshifted columns");
  }
  return two->shifted;
}

RowPartition shift_bipartition(const GroundTruth& truth) {
  std::vector<std::uint64_t> labels(truth.column_perms.size(), 0);
  for (std::size_t n : truth.shifted_columns()) labels[n] = 1;
  return partition_by(labels);
}

bool l0_exact(const Corpus& corpus, const GroundTruth& truth) {
  const LSets sets = estimate_l_sets(corpus, truth.shifted_columns());
  const auto noisy = truth.noise_mask();
  std::vector<std::size_t> clean;
  for (std::size_t l = 0; l < noisy.size(); ++l) {
    if (!noisy[l]) clean.push_back(l);
  }
  return sets.unshifted == clean;
}

bool l1_exact(const Corpus& corpus, const GroundTruth& truth) {
  const auto shifted = truth.shifted_columns();
  const LSets sets = estimate_l_sets(corpus, shifted);
  const auto noisy = truth.noise_mask();
  const Permutation pi = truth.coherent(shifted.front());
  std::vector<std::size_t> expected;
  for (std::size_t l = 0; l < noisy.size(); ++l) {
    if (!noisy[pi(l)]) expected.push_back(l);
  }
  return sets.shifted == expected;
}

std::size_t first_block_count(const GroundTruth& truth) {
  std::vector<bool> seen(truth.blocks.count(), false);
  std::size_t k = 0;
  for (const auto& sigma : truth.column_perms) {
    if (!seen[sigma(0)]) {
      seen[sigma(0)] = true;
      ++k;
    }
  }
  return k;
}

bool prefix_identical(const Corpus& corpus, const GroundTruth& truth) {
  std::vector<std::uint64_t> first(truth.column_perms.size());
  for (std::size_t n = 0; n < first.size(); ++n) first[n] = truth.column_perms[n](0);
  return same_partition(row_partition(corpus, 0), partition_by(first));
}

}  // namespace

std::string_view event_name(ProbEvent event) {
  for (const auto& e : kEventNames) {
    if (e.event == event) return e.name;
  }
  return "unknown";
}

std::optional<ProbEvent> parse_event(std::string_view name) {
  for (const auto& e : kEventNames) {
    if (e.name == name || e.alias == name) return e.event;
  }
  return std::nullopt;
}

double closed_form(ProbEvent event, const ModelParams& params) {
  params.validate();
  if (!is_two_block_event(event)) {
    throw DomainError("the prefix event has no parameter-only closed form");
  }
  const std::size_t shifted = shifted_count(params);
  const double unshifted = static_cast<double>(params.columns - shifted);

  if (event == ProbEvent::L0Exact || event == ProbEvent::L1Exact) {
    const auto p = l_sets_exact_prob_counts(params.q, unshifted, static_cast<double>(shifted),
                                            static_cast<double>(params.noise_count));
    return event == ProbEvent::L0Exact ? p.unshifted : p.shifted;
  }

  if (params.restricted_prefix) {
    throw DomainError("row-event closed forms assume noise uniform over all loci");
  }
  TwoBlockCounts counts;
  counts.q = params.q;
  counts.unshifted = unshifted;
  counts.shifted = static_cast<double>(shifted);
  counts.weights = LociWeights::fixed_count(params.noise_count, params.blocks.total());
  switch (event) {
    case ProbEvent::RowIsNBipartition:
      return p_n_closed(counts);
    case ProbEvent::RowTwoValued:
      return p2_closed(counts);
    default:
      return p2_closed(counts) - p_n_closed(counts);
  }
}

ProbReport monte_carlo(ProbEvent event, const ModelParams& params, std::size_t trials,
                       std::uint64_t seed) {
  if (trials < ProbReport::kMinTrials) {
    throw DomainError("at least " + std::to_string(ProbReport::kMinTrials) +
                      " trials are required, got " + std::to_string(trials));
  }
  params.validate();
  if (event == ProbEvent::PrefixPartitionIdentical && !params.restricted_prefix) {
    throw DomainError("the prefix event needs restricted_prefix");
  }

  ProbReport report;
  report.event = std::string(event_name(event));
  report.trials = trials;
  report.seed = seed;

  double closed_sum = 0.0;
  const bool per_trial_closed = event == ProbEvent::PrefixPartitionIdentical;
  if (!per_trial_closed) report.closed_form = closed_form(event, params);

  const std::size_t length = params.blocks.total();
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, t));
    const GeneratedCorpus g = generate(params, rng);
    bool hit = false;
    switch (event) {
      case ProbEvent::RowIsNBipartition:
      case ProbEvent::RowTwoValued:
      case ProbEvent::TwoValuedNotN: {
        const std::size_t row = rng.below(length);
        const RowPartition part = row_partition(g.corpus, row);
        const bool two = part.size() == 2;
        const bool is_n = two && same_partition(part, shift_bipartition(g.truth));
        hit = event == ProbEvent::RowTwoValued ? two
              : event == ProbEvent::RowIsNBipartition ? is_n
                                                      : two && !is_n;
        break;
      }
      case ProbEvent::L0Exact:
        hit = l0_exact(g.corpus, g.truth);
        break;
      case ProbEvent::L1Exact:
        hit = l1_exact(g.corpus, g.truth);
        break;
      case ProbEvent::PrefixPartitionIdentical: {
        hit = prefix_identical(g.corpus, g.truth);
        closed_sum += g.truth.x.empty()
                          ? 0.0
                          : (params.distinguished_prefix
                                 ? 1.0
                                 : prefix_partition_prob(params.q, first_block_count(g.truth)).exact);
        break;
      }
    }
    if (hit) ++report.hits;
  }
  if (per_trial_closed) report.closed_form = closed_sum / static_cast<double>(trials);

  const double n = static_cast<double>(trials);
  report.mc_estimate = static_cast<double>(report.hits) / n;
  report.mc_stderr = std::sqrt(report.mc_estimate * (1.0 - report.mc_estimate) / n);
  const double closed_se = std::sqrt(report.closed_form * (1.0 - report.closed_form) / n);
  report.agrees = std::abs(report.closed_form - report.mc_estimate) <=
                  ProbReport::kAgreementSigmas * std::max(report.mc_stderr, closed_se);
  return report;
}

}  // namespace unshuffle
