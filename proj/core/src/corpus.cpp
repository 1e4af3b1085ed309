#include "unshuffle/corpus.hpp"

#include <algorithm>
#include <string>

#include "unshuffle/error.hpp"

namespace unshuffle {

Corpus::Corpus(std::size_t rows, std::size_t columns, std::uint64_t q)
    : rows_(rows), columns_(columns), q_(q), data_(rows * columns, 0) {
  if (q < 2) throw StructuralError("alphabet size must be at least 2");
  if (q > (std::uint64_t{1} << 32)) throw StructuralError("alphabet size exceeds 2^32");
}

Corpus Corpus::from_columns(const std::vector<std::vector<Symbol>>& columns, std::uint64_t q) {
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  Corpus out(rows, columns.size(), q);
  for (std::size_t n = 0; n < columns.size(); ++n) {
    if (columns[n].size() != rows) {
      throw StructuralError("column " + std::to_string(n) + " has length " +
                            std::to_string(columns[n].size()) + ", expected " +
                            std::to_string(rows));
    }
    for (std::size_t l = 0; l < rows; ++l) out.set(l, n, columns[n][l]);
  }
  return out;
}

void Corpus::set(std::size_t row, std::size_t column, Symbol value) {
  if (value >= q_) {
    throw StructuralError("symbol " + std::to_string(value) + " outside alphabet of size " +
                          std::to_string(q_));
  }
  data_[column * rows_ + row] = value;
}

std::vector<Symbol> Corpus::row(std::size_t l) const {
  std::vector<Symbol> out(columns_);
  for (std::size_t n = 0; n < columns_; ++n) out[n] = at(l, n);
  return out;
}

Corpus Corpus::suffix(std::size_t first) const {
  if (first > rows_) throw StructuralError("suffix start beyond row count");
  Corpus out;
  out.rows_ = rows_ - first;
  out.columns_ = columns_;
  out.q_ = q_;
  out.data_.reserve(out.rows_ * columns_);
  for (std::size_t n = 0; n < columns_; ++n) {
    auto col = column(n);
    out.data_.insert(out.data_.end(), col.begin() + static_cast<std::ptrdiff_t>(first), col.end());
  }
  return out;
}

Corpus apply_unshuffle(const Corpus& corpus, std::span<const Permutation> perms) {
  if (perms.size() != corpus.columns()) {
    throw StructuralError("apply_unshuffle: " + std::to_string(perms.size()) +
                          " permutations for " + std::to_string(corpus.columns()) + " columns");
  }
  Corpus out = corpus;
  for (std::size_t n = 0; n < corpus.columns(); ++n) {
    const auto moved = apply(perms[n], corpus.column(n));
    auto dst = out.column(n);
    std::copy(moved.begin(), moved.end(), dst.begin());
  }
  return out;
}

}  // namespace unshuffle
