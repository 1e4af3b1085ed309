#pragma once

// Synchronization form of unshuffling on the complete graph: every column j
// carries a potential sigma_j in S_M, realized on [L] by its coherent block
// permutation g_j, and the objective rewards agreement between the
// unshuffled columns u_j = apply(invert(g_j), y_j).
//
// With R_j^* the matrix of invert(g_j) under (rho(p))_{ab} = delta_{b,p(a)},
// u_j = R_j^* y_j and the objective is
//   -sum_{j,k} <R_j^* y_j, R_k^* y_k> = -Tr(R R^* Y),
// where R stacks the R_j vertically and Y is the NL x NL Gram matrix with
// block (k, j) entry (a, b) equal to <y_k(a), y_j(b)>.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "unshuffle/corpus.hpp"
#include "unshuffle/permutation.hpp"

namespace unshuffle {

enum class Embedding {
  /// Symbols embedded one-hot, so <a, b> = [a == b] counts matches.
  Indicator,
  /// Values used as real scalars, so <a, b> = a * b.
  Raw,
};

struct SyncInstance {
  /// N columns y_j, each of length L.
  std::vector<std::vector<double>> columns;
  BlockStructure blocks;
  Embedding embedding = Embedding::Indicator;

  static SyncInstance from_corpus(const Corpus& corpus, BlockStructure blocks,
                                  Embedding embedding = Embedding::Indicator);

  std::size_t count() const noexcept { return columns.size(); }
  std::size_t length() const noexcept { return blocks.total(); }
  double inner(double a, double b) const;
  /// StructuralError when a column length differs from blocks.total().
  void validate() const;
};

struct PotentialAssignment {
  std::vector<Permutation> sigmas;

  static PotentialAssignment identity(std::size_t columns, std::size_t blocks);
  bool operator==(const PotentialAssignment&) const = default;
};

/// u_j = apply(invert(coherent(sigma_j)), y_j) for every column.
std::vector<std::vector<double>> unshuffled_columns(const PotentialAssignment& assignment,
                                                    const SyncInstance& instance);

double objective_pairwise(const PotentialAssignment& assignment, const SyncInstance& instance);

/// Same value through explicit NL x NL matrices.
double objective_trace(const PotentialAssignment& assignment, const SyncInstance& instance);

/// True when coherent(a_j) o invert(coherent(b_j)) is one common permutation
/// of [L] for all j, i.e. both potentials unshuffle the columns identically
/// up to a global relabeling of positions.
bool same_up_to_gauge(const PotentialAssignment& a, const PotentialAssignment& b,
                      const BlockStructure& blocks);

struct SyncSearchOptions {
  /// Largest number of assignments evaluated.
  std::uint64_t max_assignments = 1'000'000;
};

struct SyncSolution {
  PotentialAssignment assignment;
  double objective = 0.0;
  std::uint64_t evaluated = 0;
  /// sigma_1 pinned to the identity; only done for equal block lengths,
  /// where left multiplication of every sigma_j by a common element of S_M
  /// is an exact symmetry.
  bool first_fixed = false;
};

/// Exhaustive minimization of objective_pairwise over (S_M)^N in
/// lexicographic order, keeping the first minimizer. Throws SizeLimitError
/// when the search space exceeds options.max_assignments.
SyncSolution brute_force_sync(const SyncInstance& instance, const SyncSearchOptions& options = {});

/// brute_force_sync for each candidate block structure; returns the index of
/// the candidate with the smallest objective (ties: earliest).
std::size_t best_block_structure(const std::vector<std::vector<double>>& columns,
                                 const std::vector<BlockStructure>& candidates,
                                 Embedding embedding, std::vector<SyncSolution>* solutions = nullptr,
                                 const SyncSearchOptions& options = {});

}  // namespace unshuffle
