#include "unshuffle/sync_objective.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "unshuffle/error.hpp"

namespace unshuffle {

SyncInstance SyncInstance::from_corpus(const Corpus& corpus, BlockStructure blocks,
                                       Embedding embedding) {
  SyncInstance out;
  out.blocks = std::move(blocks);
  out.embedding = embedding;
  out.columns.reserve(corpus.columns());
  for (std::size_t n = 0; n < corpus.columns(); ++n) {
    auto col = corpus.column(n);
    out.columns.emplace_back(col.begin(), col.end());
  }
  out.validate();
  return out;
}

double SyncInstance::inner(double a, double b) const {
  return embedding == Embedding::Indicator ? (a == b ? 1.0 : 0.0) : a * b;
}

void SyncInstance::validate() const {
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != blocks.total()) {
      throw StructuralError("column " + std::to_string(j) + " has length " +
                            std::to_string(columns[j].size()) + ", blocks sum to " +
                            std::to_string(blocks.total()));
    }
  }
}

PotentialAssignment PotentialAssignment::identity(std::size_t columns, std::size_t blocks) {
  return {std::vector<Permutation>(columns, Permutation::identity(blocks))};
}

namespace {

void check_assignment(const PotentialAssignment& assignment, const SyncInstance& instance) {
  instance.validate();
  if (assignment.sigmas.size() != instance.count()) {
    throw StructuralError(std::to_string(assignment.sigmas.size()) + " potentials for " +
                          std::to_string(instance.count()) + " columns");
  }
}

double pairwise_value(const std::vector<const std::vector<double>*>& u,
                      const SyncInstance& instance) {
  double total = 0.0;
  const std::size_t length = instance.length();
  for (std::size_t j = 0; j < u.size(); ++j) {
    for (std::size_t k = 0; k < u.size(); ++k) {
      for (std::size_t a = 0; a < length; ++a) total += instance.inner((*u[j])[a], (*u[k])[a]);
    }
  }
  return -total;
}

using Matrix = std::vector<std::vector<double>>;

Matrix zeros(std::size_t rows, std::size_t cols) {
  return Matrix(rows, std::vector<double>(cols, 0.0));
}

}  // namespace

std::vector<std::vector<double>> unshuffled_columns(const PotentialAssignment& assignment,
                                                    const SyncInstance& instance) {
  check_assignment(assignment, instance);
  std::vector<std::vector<double>> out;
  out.reserve(instance.count());
  for (std::size_t j = 0; j < instance.count(); ++j) {
    const Permutation g_inv =
        invert(coherent_block_permutation(assignment.sigmas[j], instance.blocks));
    out.push_back(unshuffle::apply(g_inv, instance.columns[j]));
  }
  return out;
}

double objective_pairwise(const PotentialAssignment& assignment, const SyncInstance& instance) {
  const auto u = unshuffled_columns(assignment, instance);
  std::vector<const std::vector<double>*> ptrs;
  for (const auto& col : u) ptrs.push_back(&col);
  return pairwise_value(ptrs, instance);
}

double objective_trace(const PotentialAssignment& assignment, const SyncInstance& instance) {
  check_assignment(assignment, instance);
  const std::size_t n = instance.count();
  const std::size_t length = instance.length();
  const std::size_t dim = n * length;

  // R is NL x L with block j = R_j = rho(invert(g_j))^T.
  Matrix r = zeros(dim, length);
  for (std::size_t j = 0; j < n; ++j) {
    const Permutation p = invert(coherent_block_permutation(assignment.sigmas[j], instance.blocks));
    for (std::size_t a = 0; a < length; ++a) r[j * length + p(a)][a] = 1.0;
  }

  Matrix rr = zeros(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t c = 0; c < dim; ++c) {
      double s = 0.0;
      for (std::size_t t = 0; t < length; ++t) s += r[i][t] * r[c][t];
      rr[i][c] = s;
    }
  }

  Matrix y = zeros(dim, dim);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t a = 0; a < length; ++a) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t b = 0; b < length; ++b) {
          y[k * length + a][j * length + b] =
              instance.inner(instance.columns[k][a], instance.columns[j][b]);
        }
      }
    }
  }

  double trace = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t c = 0; c < dim; ++c) trace += rr[i][c] * y[c][i];
  }
  return -trace;
}

bool same_up_to_gauge(const PotentialAssignment& a, const PotentialAssignment& b,
                      const BlockStructure& blocks) {
  if (a.sigmas.size() != b.sigmas.size()) {
    throw StructuralError("assignments cover different column counts");
  }
  if (a.sigmas.empty()) return true;
  auto relative = [&](std::size_t j) {
    return compose(coherent_block_permutation(a.sigmas[j], blocks),
                   invert(coherent_block_permutation(b.sigmas[j], blocks)));
  };
  const Permutation h = relative(0);
  for (std::size_t j = 1; j < a.sigmas.size(); ++j) {
    if (relative(j) != h) return false;
  }
  return true;
}

SyncSolution brute_force_sync(const SyncInstance& instance, const SyncSearchOptions& options) {
  instance.validate();
  const std::size_t n = instance.count();
  const std::size_t m = instance.blocks.count();
  const auto lengths = instance.blocks.lengths();

  SyncSolution best;
  best.first_fixed =
      n > 0 && std::adjacent_find(lengths.begin(), lengths.end(), std::not_equal_to<>()) ==
                   lengths.end();
  if (n == 0) return best;

  const std::vector<Permutation> perms = all_permutations(m);
  const std::size_t free_columns = best.first_fixed ? n - 1 : n;
  std::uint64_t space = 1;
  for (std::size_t j = 0; j < free_columns; ++j) {
    if (space > options.max_assignments / perms.size()) {
      throw SizeLimitError("search space (" + std::to_string(perms.size()) + ")^" +
                           std::to_string(free_columns) + " exceeds " +
                           std::to_string(options.max_assignments) + " assignments");
    }
    space *= perms.size();
  }

  // unshuffled[j][i] = column j unshuffled by perms[i].
  std::vector<std::vector<std::vector<double>>> unshuffled(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& sigma : perms) {
      unshuffled[j].push_back(
          unshuffle::apply(invert(coherent_block_permutation(sigma, instance.blocks)), instance.columns[j]));
    }
  }

  std::vector<std::size_t> index(n, 0);
  std::vector<std::size_t> best_index;
  std::vector<const std::vector<double>*> u(n);
  double best_value = std::numeric_limits<double>::infinity();
  const std::size_t first_free = best.first_fixed ? 1 : 0;
  auto advance = [&] {
    for (std::size_t j = n; j-- > first_free;) {
      if (++index[j] < perms.size()) return true;
      index[j] = 0;
    }
    return false;
  };
  do {
    for (std::size_t j = 0; j < n; ++j) u[j] = &unshuffled[j][index[j]];
    const double value = pairwise_value(u, instance);
    ++best.evaluated;
    if (best_index.empty() || value < best_value - 1e-9 * std::max(1.0, std::abs(best_value))) {
      best_value = value;
      best_index = index;
    }
  } while (advance());

  best.objective = best_value;
  for (std::size_t i : best_index) best.assignment.sigmas.push_back(perms[i]);
  return best;
}

std::size_t best_block_structure(const std::vector<std::vector<double>>& columns,
                                 const std::vector<BlockStructure>& candidates,
                                 Embedding embedding, std::vector<SyncSolution>* solutions,
                                 const SyncSearchOptions& options) {
  if (candidates.empty()) throw StructuralError("no candidate block structures");
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    SyncInstance instance{columns, candidates[c], embedding};
    SyncSolution s = brute_force_sync(instance, options);
    if (s.objective < best_value) {
      best_value = s.objective;
      best = c;
    }
    if (solutions) solutions->push_back(std::move(s));
  }
  return best;
}

}  // namespace unshuffle
