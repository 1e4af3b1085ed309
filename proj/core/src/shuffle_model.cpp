#include "unshuffle/shuffle_model.hpp"

#include <cmath>
#include <set>
#include <string>

#include "unshuffle/error.hpp"

namespace unshuffle {

std::size_t count_from_fraction(double fraction, std::size_t total) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw DomainError("fraction " + std::to_string(fraction) + " outside [0, 1]");
  }
  const double scaled = fraction * static_cast<double>(total);
  return static_cast<std::size_t>(std::ceil(scaled - 1e-9));
}

namespace {

std::size_t factorial_capped(std::size_t m, std::size_t cap) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= m; ++i) {
    f *= i;
    if (f > cap) return cap + 1;
  }
  return f;
}

std::size_t spec_total(const ShuffleSpec& spec, std::size_t block_count) {
  struct Visitor {
    std::size_t block_count;
    std::size_t operator()(const TwoBlockShuffle&) const { return 0; }
    std::size_t operator()(const ExplicitShuffle& s) const {
      std::size_t t = 0;
      for (const auto& [sigma, c] : s.counts) t += c;
      return t;
    }
    std::size_t operator()(const RandomDistinctShuffle& s) const {
      std::size_t t = 0;
      for (std::size_t c : s.multiplicities) t += c;
      return t;
    }
    std::size_t operator()(const AllPermutationsShuffle&) const {
      return factorial_capped(block_count, std::size_t{1} << 40);
    }
  };
  return std::visit(Visitor{block_count}, spec);
}

}  // namespace

void ModelParams::validate() const {
  if (q < 2) throw InfeasibleParametersError("alphabet size q must exceed 1");
  if (q > (std::uint64_t{1} << 32)) throw InfeasibleParametersError("q must not exceed 2^32");
  if (blocks.count() == 0) throw InfeasibleParametersError("at least one block is required");
  if (columns == 0) throw InfeasibleParametersError("at least one column is required");

  const std::size_t allowed =
      restricted_prefix ? blocks.total() - blocks.count() : blocks.total();
  if (noise_count > allowed) {
    throw InfeasibleParametersError("noise count " + std::to_string(noise_count) +
                                    " exceeds the " + std::to_string(allowed) +
                                    " admissible loci");
  }
  if (distinguished_prefix && q < blocks.count()) {
    throw InfeasibleParametersError("distinct prefix values need q >= M (q = " +
                                    std::to_string(q) + ", M = " +
                                    std::to_string(blocks.count()) + ")");
  }

  if (const auto* two = std::get_if<TwoBlockShuffle>(&shuffle)) {
    if (blocks.count() != 2) {
      throw InfeasibleParametersError("two-block shuffle needs exactly two blocks");
    }
    if (two->shifted > columns) {
      throw InfeasibleParametersError("shifted column count exceeds N");
    }
    return;
  }
  if (const auto* ex = std::get_if<ExplicitShuffle>(&shuffle)) {
    std::set<Permutation> seen;
    for (const auto& [sigma, c] : ex->counts) {
      if (sigma.size() != blocks.count()) {
        throw InfeasibleParametersError("permutation " + sigma.to_string() + " is not in S_" +
                                        std::to_string(blocks.count()));
      }
      if (!seen.insert(sigma).second) {
        throw InfeasibleParametersError("permutation " + sigma.to_string() + " listed twice");
      }
    }
  }
  if (const auto* rd = std::get_if<RandomDistinctShuffle>(&shuffle)) {
    const std::size_t available = factorial_capped(blocks.count(), rd->multiplicities.size());
    if (rd->multiplicities.size() > available) {
      throw InfeasibleParametersError("more distinct permutations requested than |S_M|");
    }
  }
  const std::size_t total = spec_total(shuffle, blocks.count());
  if (total != columns) {
    throw InfeasibleParametersError("shuffle multiplicities sum to " + std::to_string(total) +
                                    " but N = " + std::to_string(columns));
  }
}

ModelParams two_block_params(std::uint64_t q, std::size_t first_length,
                             std::size_t second_length, std::size_t columns, double lambda,
                             double nu, std::uint64_t seed) {
  ModelParams p;
  p.q = q;
  p.blocks = BlockStructure({first_length, second_length});
  p.columns = columns;
  p.noise_count = count_from_fraction(lambda, p.blocks.total());
  p.shuffle = TwoBlockShuffle{count_from_fraction(nu, columns)};
  p.seed = seed;
  return p;
}

Permutation GroundTruth::coherent(std::size_t n) const {
  return coherent_block_permutation(column_perms.at(n), blocks);
}

std::vector<std::size_t> GroundTruth::columns_with(const Permutation& sigma) const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < column_perms.size(); ++n) {
    if (column_perms[n] == sigma) out.push_back(n);
  }
  return out;
}

std::vector<std::size_t> GroundTruth::shifted_columns() const {
  return columns_with(Permutation::from_one_line({2, 1}));
}

std::vector<bool> GroundTruth::noise_mask() const {
  std::vector<bool> mask(x.size(), false);
  for (std::size_t l : noise_loci) mask[l] = true;
  return mask;
}

namespace {

std::vector<Permutation> draw_arrangement(const ModelParams& params, Rng& rng) {
  const std::size_t m_count = params.blocks.count();
  std::vector<Permutation> arrangement;
  arrangement.reserve(params.columns);

  auto random_perm = [&] {
    std::vector<Permutation::Index> images(m_count);
    for (std::size_t i = 0; i < m_count; ++i) images[i] = static_cast<Permutation::Index>(i);
    rng.shuffle(images);
    return Permutation::from_images(std::move(images));
  };

  if (const auto* two = std::get_if<TwoBlockShuffle>(&params.shuffle)) {
    const Permutation id = Permutation::identity(2);
    const Permutation swap = Permutation::from_one_line({2, 1});
    arrangement.assign(params.columns - two->shifted, id);
    arrangement.insert(arrangement.end(), two->shifted, swap);
  } else if (const auto* ex = std::get_if<ExplicitShuffle>(&params.shuffle)) {
    for (const auto& [sigma, c] : ex->counts) arrangement.insert(arrangement.end(), c, sigma);
  } else if (const auto* rd = std::get_if<RandomDistinctShuffle>(&params.shuffle)) {
    std::set<Permutation> used;
    for (std::size_t c : rd->multiplicities) {
      Permutation sigma = random_perm();
      while (used.contains(sigma)) sigma = random_perm();
      used.insert(sigma);
      arrangement.insert(arrangement.end(), c, sigma);
    }
  } else {
    arrangement = all_permutations(m_count);
  }
  rng.shuffle(arrangement);
  return arrangement;
}

}  // namespace

GroundTruth sample_ground_truth(const ModelParams& params, Rng& rng) {
  params.validate();
  GroundTruth truth;
  truth.blocks = params.blocks;
  const std::size_t length = params.blocks.total();
  const auto starts = params.blocks.starts();

  truth.x.resize(length);
  for (auto& v : truth.x) v = static_cast<Symbol>(rng.below(params.q));
  if (params.distinguished_prefix) {
    auto distinct = [&] {
      std::set<Symbol> values;
      for (std::size_t s : starts) values.insert(truth.x[s]);
      return values.size() == starts.size();
    };
    while (!distinct()) {
      for (std::size_t s : starts) truth.x[s] = static_cast<Symbol>(rng.below(params.q));
    }
  }

  std::vector<std::size_t> admissible;
  std::vector<bool> is_start(length, false);
  if (params.restricted_prefix) {
    for (std::size_t s : starts) is_start[s] = true;
  }
  for (std::size_t l = 0; l < length; ++l) {
    if (!is_start[l]) admissible.push_back(l);
  }
  for (std::size_t i : rng.sample(admissible.size(), params.noise_count)) {
    truth.noise_loci.push_back(admissible[i]);
  }

  truth.column_perms = draw_arrangement(params, rng);
  return truth;
}

GeneratedCorpus generate(const ModelParams& params, Rng& rng) {
  GeneratedCorpus out;
  out.truth = sample_ground_truth(params, rng);
  const GroundTruth& truth = out.truth;
  const std::size_t length = params.blocks.total();
  out.corpus = Corpus(length, params.columns, params.q);

  // Coherent permutations are shared by every column with the same sigma.
  std::vector<std::pair<Permutation, Permutation>> cache;
  auto coherent_for = [&](const Permutation& sigma) -> const Permutation& {
    for (const auto& [s, c] : cache) {
      if (s == sigma) return c;
    }
    cache.emplace_back(sigma, coherent_block_permutation(sigma, params.blocks));
    return cache.back().second;
  };

  std::vector<Symbol> noisy(length);
  for (std::size_t n = 0; n < params.columns; ++n) {
    noisy = truth.x;
    for (std::size_t l : truth.noise_loci) {
      const std::uint64_t xi = rng.below(params.q);
      noisy[l] = static_cast<Symbol>((std::uint64_t{noisy[l]} + xi) % params.q);
    }
    const Permutation& p = coherent_for(truth.column_perms[n]);
    auto col = out.corpus.column(n);
    for (std::size_t l = 0; l < length; ++l) col[l] = noisy[p(l)];
  }
  return out;
}

GeneratedCorpus generate(const ModelParams& params) {
  Rng rng(params.seed);
  return generate(params, rng);
}

Corpus unshuffled_reference(const Corpus& corpus, const GroundTruth& truth) {
  std::vector<Permutation> inverses;
  inverses.reserve(corpus.columns());
  for (std::size_t n = 0; n < corpus.columns(); ++n) inverses.push_back(invert(truth.coherent(n)));
  return apply_unshuffle(corpus, inverses);
}

}  // namespace unshuffle
