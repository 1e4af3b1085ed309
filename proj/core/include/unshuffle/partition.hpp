#pragma once

// Partitions of the column index set induced by rows of a corpus, and the
// structural diagnostics built on them.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "unshuffle/corpus.hpp"
#include "unshuffle/permutation.hpp"

namespace unshuffle {

/// Columns grouped by their value at one row. Parts are ordered by their
/// smallest column index, and columns within a part ascend.
struct RowPartition {
  std::vector<std::vector<std::size_t>> parts;
  std::vector<Symbol> values;

  std::size_t size() const noexcept { return parts.size(); }

  /// Part index of every column.
  std::vector<std::size_t> labels(std::size_t columns) const;
};

RowPartition row_partition(const Corpus& corpus, std::size_t row);

/// Groups indices 0..labels.size()-1 by equal label; same part ordering as
/// row_partition.
RowPartition partition_by(std::span<const std::uint64_t> labels);

/// Set-partition equality, ignoring part values.
bool same_partition(const RowPartition& a, const RowPartition& b);

/// True when every part of `fine` lies inside a part of `coarse`.
bool refines(const RowPartition& fine, const RowPartition& coarse, std::size_t columns);

/// P(l) for every row.
std::vector<std::size_t> partition_profile(const Corpus& corpus);

struct TwoValuedRow {
  std::size_t row = 0;
  RowPartition partition;
};

std::vector<TwoValuedRow> two_valued_rows(const Corpus& corpus);

struct SubsetSums {
  bool distinct = false;
  /// Sorted distinct subset sums; 2^M entries exactly when `distinct`.
  std::vector<std::uint64_t> sums;
};

/// Enumerates all 2^M subset sums; throws SizeLimitError for M > 25.
SubsetSums distinct_subset_sums(const BlockStructure& blocks);

}  // namespace unshuffle
