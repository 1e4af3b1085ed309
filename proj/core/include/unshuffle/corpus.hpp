#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "unshuffle/permutation.hpp"

namespace unshuffle {

using Symbol = std::uint32_t;

/// L x N matrix over Z/qZ. Column n is message n; storage is column-major
/// so each message is a contiguous span.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::size_t rows, std::size_t columns, std::uint64_t q);

  /// Builds from explicit columns; every column must have the same length
  /// and every entry must lie in [0, q).
  static Corpus from_columns(const std::vector<std::vector<Symbol>>& columns, std::uint64_t q);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t columns() const noexcept { return columns_; }
  std::uint64_t alphabet() const noexcept { return q_; }
  bool empty() const noexcept { return rows_ == 0 || columns_ == 0; }

  Symbol at(std::size_t row, std::size_t column) const { return data_[column * rows_ + row]; }
  void set(std::size_t row, std::size_t column, Symbol value);

  std::span<const Symbol> column(std::size_t n) const {
    return {data_.data() + n * rows_, rows_};
  }
  std::span<Symbol> column(std::size_t n) { return {data_.data() + n * rows_, rows_}; }

  std::vector<Symbol> row(std::size_t l) const;

  /// Keeps rows [first, rows()) of every column.
  Corpus suffix(std::size_t first) const;

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t columns_ = 0;
  std::uint64_t q_ = 0;
  std::vector<Symbol> data_;
};

/// Column n of the result is apply(perms[n], column n of the input).
Corpus apply_unshuffle(const Corpus& corpus, std::span<const Permutation> perms);

}  // namespace unshuffle
