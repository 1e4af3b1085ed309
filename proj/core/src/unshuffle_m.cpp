#include "unshuffle/unshuffle_m.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "unshuffle/error.hpp"
#include "unshuffle/partition.hpp"

namespace unshuffle {

void AlignConfig::validate(std::size_t columns) const {
  if (!(weight_base > 1.0)) throw DomainError("weight_base must exceed 1");
  if (columns > 0 && reference_column >= columns) {
    throw StructuralError("reference column " + std::to_string(reference_column) +
                          " out of range for " + std::to_string(columns) + " columns");
  }
}

std::size_t AlignConfig::structured_max(std::size_t columns) const {
  if (structured_part_max) return *structured_part_max;
  return std::max<std::size_t>(2, (columns + 3) / 4);
}

namespace {

// Lexicographic maximization of the match vector: keep the shifts that
// match at the earliest defined row where any of them matches. A secondary
// reference, when given, breaks the remaining ties the same way.
std::size_t best_shift_lexicographic(std::span<const Symbol> column,
                                     const PartialTuple& reference,
                                     const PartialTuple* secondary) {
  const std::size_t rows = column.size();
  std::vector<std::size_t> candidates(rows);
  for (std::size_t s = 0; s < rows; ++s) candidates[s] = s;
  std::vector<std::size_t> kept;
  for (const PartialTuple* ref : {&reference, secondary}) {
    if (ref == nullptr) continue;
    for (std::size_t l = 0; l < rows && candidates.size() > 1; ++l) {
      const auto& want = (*ref)[l];
      if (!want) continue;
      kept.clear();
      for (std::size_t s : candidates) {
        if (column[(l + s) % rows] == *want) kept.push_back(s);
      }
      if (!kept.empty()) candidates.swap(kept);
    }
  }
  return candidates.front();
}

long double weighted_score(std::span<const Symbol> column, const PartialTuple& reference,
                           std::size_t shift, long double base) {
  const std::size_t rows = column.size();
  long double score = 0.0L;
  long double weight = 1.0L / base;
  for (std::size_t l = 0; l < rows; ++l, weight /= base) {
    if (PartialTuple::matches(reference[l], column[(l + shift) % rows])) score += weight;
  }
  return score;
}

std::size_t best_shift_weighted(std::span<const Symbol> column, const PartialTuple& reference,
                                const PartialTuple* secondary, long double base) {
  const std::size_t rows = column.size();
  std::size_t best = 0;
  long double best_score = -1.0L;
  long double best_secondary = -1.0L;
  for (std::size_t s = 0; s < rows; ++s) {
    const long double score = weighted_score(column, reference, s, base);
    if (score < best_score) continue;
    const long double tie =
        secondary == nullptr ? 0.0L : weighted_score(column, *secondary, s, base);
    if (score > best_score || tie > best_secondary) {
      best_score = score;
      best_secondary = tie;
      best = s;
    }
  }
  return best;
}

std::vector<std::size_t> template_align(const Corpus& corpus, const PartialTuple& reference,
                                        const PartialTuple* secondary,
                                        const AlignConfig& config) {
  config.validate(0);
  for (const PartialTuple* ref : {&reference, secondary}) {
    if (ref != nullptr && ref->size() != corpus.rows()) {
      throw StructuralError("reference of length " + std::to_string(ref->size()) + " for " +
                            std::to_string(corpus.rows()) + " rows");
    }
  }
  std::vector<std::size_t> shifts(corpus.columns(), 0);
  if (corpus.rows() == 0) return shifts;
  const bool exact = config.weight_base >= 2.0;
  for (std::size_t k = 0; k < corpus.columns(); ++k) {
    shifts[k] = exact ? best_shift_lexicographic(corpus.column(k), reference, secondary)
                      : best_shift_weighted(corpus.column(k), reference, secondary,
                                            static_cast<long double>(config.weight_base));
  }
  return shifts;
}

Corpus rotate_columns(const Corpus& corpus, std::span<const std::size_t> shifts) {
  std::vector<Permutation> rotations;
  rotations.reserve(corpus.columns());
  for (std::size_t s : shifts) rotations.push_back(Permutation::cyclic_shift(corpus.rows(), s));
  return apply_unshuffle(corpus, rotations);
}

}  // namespace

std::vector<std::size_t> weighted_template_align(const Corpus& corpus,
                                                 const PartialTuple& reference,
                                                 const AlignConfig& config) {
  return template_align(corpus, reference, nullptr, config);
}

std::vector<std::size_t> weighted_shift_align(const Corpus& corpus, std::size_t reference_column,
                                              const AlignConfig& config) {
  AlignConfig cfg = config;
  cfg.reference_column = reference_column;
  cfg.validate(corpus.columns());
  auto shifts = weighted_template_align(
      corpus, PartialTuple::from_values(corpus.column(reference_column)), cfg);
  // The reference matches itself everywhere at shift 0; a periodic column
  // can tie at other shifts but 0 is the smallest.
  shifts[reference_column] = 0;
  return shifts;
}

PartialTuple consensus_template(const Corpus& corpus) {
  PartialTuple out(corpus.rows());
  std::unordered_map<Symbol, std::size_t> counts;
  for (std::size_t l = 0; l < corpus.rows(); ++l) {
    counts.clear();
    for (std::size_t n = 0; n < corpus.columns(); ++n) {
      const std::size_t c = ++counts[corpus.at(l, n)];
      if (2 * c > corpus.columns()) {
        out[l] = corpus.at(l, n);
        break;
      }
    }
  }
  return out;
}

std::size_t detect_block_boundary(const Corpus& aligned, const AlignConfig& config,
                                  std::span<const std::size_t> shifts) {
  const std::size_t rows = aligned.rows();
  const std::size_t tau = config.structured_max(aligned.columns());
  std::size_t boundary = rows;
  std::unordered_set<Symbol> values;
  for (std::size_t l = 0; l < rows; ++l) {
    values.clear();
    for (std::size_t n = 0; n < aligned.columns() && values.size() <= tau; ++n) {
      values.insert(aligned.at(l, n));
    }
    if (values.size() >= 2 && values.size() <= tau) {
      boundary = l;
      break;
    }
  }
  if (config.wrap_bound && !shifts.empty()) {
    if (shifts.size() != aligned.columns()) {
      throw StructuralError("detect_block_boundary: shift count does not match columns");
    }
    for (std::size_t s : shifts) {
      if (s > 0 && s < rows) boundary = std::min(boundary, rows - s);
    }
  }
  return boundary;
}

MUnshuffleResult unshuffle_m(const Corpus& corpus, const AlignConfig& config) {
  config.validate(corpus.columns());
  const std::size_t length = corpus.rows();
  const std::size_t columns = corpus.columns();
  const std::size_t max_rounds = config.max_iters == 0 ? length : config.max_iters;

  MUnshuffleResult out;
  out.aligned = corpus;
  std::vector<std::vector<Permutation::Index>> images(columns);
  for (auto& im : images) {
    im.resize(length);
    for (std::size_t l = 0; l < length; ++l) im[l] = static_cast<Permutation::Index>(l);
  }

  std::vector<std::size_t> lengths;
  std::size_t offset = 0;
  std::vector<Permutation::Index> scratch;
  std::vector<Symbol> column_scratch;
  while (offset < length && lengths.size() < max_rounds) {
    const std::size_t rows = length - offset;
    const Corpus remaining = out.aligned.suffix(offset);

    RoundTrace round;
    round.offset = offset;
    round.shifts = weighted_shift_align(remaining, config.reference_column, config);
    if (config.consensus_refine) {
      const PartialTuple consensus = consensus_template(rotate_columns(remaining, round.shifts));
      round.consensus_rows = consensus.defined_count();
      const PartialTuple own = PartialTuple::from_values(remaining.column(config.reference_column));
      round.shifts = template_align(remaining, consensus, &own, config);
    }

    for (std::size_t k = 0; k < columns; ++k) {
      const std::size_t s = round.shifts[k];
      if (s == 0) continue;
      auto col = out.aligned.column(k);
      column_scratch.assign(col.begin() + static_cast<std::ptrdiff_t>(offset), col.end());
      scratch.assign(images[k].begin() + static_cast<std::ptrdiff_t>(offset), images[k].end());
      for (std::size_t l = 0; l < rows; ++l) {
        col[offset + l] = column_scratch[(l + s) % rows];
        images[k][offset + l] = scratch[(l + s) % rows];
      }
    }

    round.boundary =
        detect_block_boundary(out.aligned.suffix(offset), config, round.shifts);
    out.iteration_trace.push_back(round);

    if (round.boundary == 0) {
      if (lengths.empty()) {
        throw AlignmentFailedError(
            "no block boundary found in the first round: the first aligned row already "
            "splits the columns into " +
            std::to_string(row_partition(out.aligned, offset).size()) + " groups");
      }
      break;
    }
    lengths.push_back(round.boundary);
    offset += round.boundary;
  }

  out.converged = offset == length;
  out.residual_rows = length - offset;
  if (!out.converged) lengths.push_back(out.residual_rows);
  out.m_hat = lengths.size();
  out.lengths_hat = BlockStructure(std::move(lengths));
  out.column_perms.reserve(columns);
  for (auto& im : images) out.column_perms.push_back(Permutation::from_images(std::move(im)));
  return out;
}

BlockStructure recover_block_structure(const MUnshuffleResult& result) {
  if (!result.converged) {
    throw AlignmentFailedError("unshuffling stopped with " + std::to_string(result.residual_rows) +
                               " unresolved rows");
  }
  std::size_t rows = result.aligned.rows();
  if (rows == 0 && !result.column_perms.empty()) rows = result.column_perms.front().size();
  if (result.lengths_hat.total() != rows) {
    throw InternalConsistencyError("recovered block lengths sum to " +
                                   std::to_string(result.lengths_hat.total()) + ", expected " +
                                   std::to_string(rows));
  }
  return result.lengths_hat;
}

}  // namespace unshuffle
