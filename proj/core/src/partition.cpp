#include "unshuffle/partition.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "unshuffle/error.hpp"

namespace unshuffle {

std::vector<std::size_t> RowPartition::labels(std::size_t columns) const {
  std::vector<std::size_t> out(columns, 0);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (std::size_t n : parts[p]) out[n] = p;
  }
  return out;
}

RowPartition partition_by(std::span<const std::uint64_t> labels) {
  RowPartition out;
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t n = 0; n < labels.size(); ++n) {
    auto [it, fresh] = index.try_emplace(labels[n], out.parts.size());
    if (fresh) {
      out.parts.emplace_back();
      out.values.push_back(static_cast<Symbol>(labels[n]));
    }
    out.parts[it->second].push_back(n);
  }
  return out;
}

RowPartition row_partition(const Corpus& corpus, std::size_t row) {
  if (row >= corpus.rows()) {
    throw StructuralError("row " + std::to_string(row) + " out of range for " +
                          std::to_string(corpus.rows()) + " rows");
  }
  std::vector<std::uint64_t> labels(corpus.columns());
  for (std::size_t n = 0; n < corpus.columns(); ++n) labels[n] = corpus.at(row, n);
  return partition_by(labels);
}

bool same_partition(const RowPartition& a, const RowPartition& b) {
  // With the canonical part ordering, equal set partitions have equal parts.
  return a.parts == b.parts;
}

bool refines(const RowPartition& fine, const RowPartition& coarse, std::size_t columns) {
  const auto coarse_label = coarse.labels(columns);
  for (const auto& part : fine.parts) {
    for (std::size_t n : part) {
      if (coarse_label[n] != coarse_label[part.front()]) return false;
    }
  }
  return true;
}

std::vector<std::size_t> partition_profile(const Corpus& corpus) {
  std::vector<std::size_t> sizes(corpus.rows());
  for (std::size_t l = 0; l < corpus.rows(); ++l) sizes[l] = row_partition(corpus, l).size();
  return sizes;
}

std::vector<TwoValuedRow> two_valued_rows(const Corpus& corpus) {
  std::vector<TwoValuedRow> out;
  for (std::size_t l = 0; l < corpus.rows(); ++l) {
    RowPartition p = row_partition(corpus, l);
    if (p.size() == 2) out.push_back({l, std::move(p)});
  }
  return out;
}

SubsetSums distinct_subset_sums(const BlockStructure& blocks) {
  constexpr std::size_t kMaxBlocks = 25;
  const std::size_t m = blocks.count();
  if (m > kMaxBlocks) {
    throw SizeLimitError("subset-sum enumeration limited to " + std::to_string(kMaxBlocks) +
                         " blocks, got " + std::to_string(m));
  }
  std::vector<std::uint64_t> sums(std::size_t{1} << m, 0);
  // sums[mask] = sums[mask without its lowest bit] + length of that bit.
  for (std::size_t mask = 1; mask < sums.size(); ++mask) {
    const std::size_t bit = static_cast<std::size_t>(__builtin_ctzll(mask));
    sums[mask] = sums[mask & (mask - 1)] + blocks.length(bit);
  }
  std::sort(sums.begin(), sums.end());
  const std::size_t all = sums.size();
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return {sums.size() == all, std::move(sums)};
}

}  // namespace unshuffle
