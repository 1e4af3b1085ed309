#pragma once

// Restricted-prefix M-block unshuffling.
//
// Each round circularly shifts the not-yet-fixed suffix of every column so
// that it lines up with the reference column, finds where the leading block
// ends, and truncates it. Noise never touches a block start, so the first
// remaining row of the reference is always a clean block prefix; the
// geometric row weights make that row dominate the alignment score.

#include <cstddef>
#include <optional>
#include <vector>

#include "unshuffle/corpus.hpp"
#include "unshuffle/permutation.hpp"
#include "unshuffle/unshuffle2.hpp"

namespace unshuffle {

struct AlignConfig {
  /// Row l (1-based) of the suffix is weighted weight_base^{-l}. Any base
  /// >= 2 makes the score a lexicographic comparison of match vectors and is
  /// evaluated exactly; bases in (1, 2) fall back to long double sums.
  double weight_base = 2.0;
  /// Cap on truncation rounds; 0 means the row count.
  std::size_t max_iters = 0;
  /// Largest partition size still counted as a block-start row; unset means
  /// max(2, ceil(N / 4)).
  std::optional<std::size_t> structured_part_max;
  /// 0-based reference column.
  std::size_t reference_column = 0;
  /// Re-align every round against the majority template of the first pass,
  /// breaking ties by the match vector against the reference column.
  bool consensus_refine = true;
  /// Cap the boundary at the wrap point R - s of every shifted column.
  bool wrap_bound = true;

  void validate(std::size_t columns) const;
  std::size_t structured_max(std::size_t columns) const;
};

struct RoundTrace {
  std::size_t offset = 0;
  std::vector<std::size_t> shifts;
  std::size_t boundary = 0;
  /// Rows of the suffix that the consensus template defines.
  std::size_t consensus_rows = 0;
};

struct MUnshuffleResult {
  std::size_t m_hat = 0;
  /// Per-round boundaries; when !converged the unresolved residual is
  /// appended as a final block so the lengths still sum to L.
  BlockStructure lengths_hat;
  std::vector<Permutation> column_perms;
  Corpus aligned;
  std::vector<RoundTrace> iteration_trace;
  bool converged = false;
  std::size_t residual_rows = 0;
};

/// Shift of each column against the reference column's values.
std::vector<std::size_t> weighted_shift_align(const Corpus& corpus, std::size_t reference_column,
                                              const AlignConfig& config);

/// Shift of each column against a partial template: argmax over s of
/// sum_l base^{-(l+1)} [template[l] == column[(l + s) mod R]], smallest s on
/// ties.
std::vector<std::size_t> weighted_template_align(const Corpus& corpus,
                                                 const PartialTuple& reference,
                                                 const AlignConfig& config);

/// Per row, the value shared by more than half of the columns.
PartialTuple consensus_template(const Corpus& corpus);

/// Number of leading rows that belong to the first block of an aligned
/// corpus. Rows are conserved (one value), noise (more than tau values) or
/// structured (2..tau values); the boundary sits before the first structured
/// row. Nonzero `shifts` (same length as the column count) additionally cap
/// it at R - s.
std::size_t detect_block_boundary(const Corpus& aligned, const AlignConfig& config,
                                  std::span<const std::size_t> shifts = {});

/// Throws AlignmentFailedError when the first round finds no boundary.
MUnshuffleResult unshuffle_m(const Corpus& corpus, const AlignConfig& config = {});

/// Throws AlignmentFailedError for an unconverged result and
/// InternalConsistencyError when the lengths do not sum to L.
BlockStructure recover_block_structure(const MUnshuffleResult& result);

}  // namespace unshuffle
