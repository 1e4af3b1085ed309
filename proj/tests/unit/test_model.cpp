#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "unshuffle/corpus.hpp"
#include "unshuffle/rng.hpp"
#include "unshuffle/shuffle_model.hpp"

using namespace unshuffle;

TEST(Rng, DeterministicAndBounded) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  Rng r(1);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(r.below(7), 7u);
  EXPECT_NE(Rng::derive(1, 0), Rng::derive(1, 1));
}

TEST(Rng, SampleIsSortedDistinct) {
  Rng r(3);
  for (int t = 0; t < 100; ++t) {
    const auto s = r.sample(20, 7);
    ASSERT_EQ(s.size(), 7u);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_EQ(std::set<std::size_t>(s.begin(), s.end()).size(), 7u);
    EXPECT_LT(s.back(), 20u);
  }
  EXPECT_EQ(r.sample(5, 5), (std::vector<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(Corpus, Basics) {
  const Corpus c = Corpus::from_columns({{0, 1, 2}, {2, 1, 0}}, 3);
  EXPECT_EQ(c.rows(), 3u);
  EXPECT_EQ(c.columns(), 2u);
  EXPECT_EQ(c.at(0, 1), 2u);
  EXPECT_EQ(c.row(1), (std::vector<Symbol>{1, 1}));
  EXPECT_EQ(c.suffix(1).rows(), 2u);
  Corpus d = c;
  EXPECT_THROW(d.set(0, 0, 3), StructuralError);
  EXPECT_THROW(Corpus(2, 2, 1), StructuralError);
}

TEST(CountFromFraction, CeilingMatchesCaptions) {
  EXPECT_EQ(count_from_fraction(0.3, 80), 24u);
  EXPECT_EQ(count_from_fraction(0.5, 82), 41u);
  EXPECT_EQ(count_from_fraction(0.5, 21), 11u);
  EXPECT_EQ(count_from_fraction(0.0, 10), 0u);
  EXPECT_THROW(count_from_fraction(1.5, 10), DomainError);
}

TEST(ShuffleModel, NoNoiseWhenLambdaZero) {
  auto p = two_block_params(5, 3, 4, 10, 0.0, 0.5, 1);
  Rng rng(p.seed);
  EXPECT_TRUE(sample_ground_truth(p, rng).noise_loci.empty());
}

TEST(ShuffleModel, ShiftedCountIsCeiling) {
  const auto p = two_block_params(3, 40, 60, 80, 0.5, 0.3, 9);
  const auto g = generate(p);
  EXPECT_EQ(g.truth.shifted_columns().size(), 24u);
  EXPECT_EQ(g.truth.noise_loci.size(), 50u);
}

TEST(ShuffleModel, RestrictedPrefixAvoidsBlockStarts) {
  ModelParams p;
  p.q = 7;
  p.blocks = BlockStructure({3, 5});
  p.columns = 4;
  p.noise_count = 6;
  p.shuffle = TwoBlockShuffle{2};
  p.restricted_prefix = true;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Rng rng(s);
    const auto t = sample_ground_truth(p, rng);
    for (std::size_t l : t.noise_loci) {
      EXPECT_NE(l, 0u);
      EXPECT_NE(l, 3u);
    }
  }
}

TEST(ShuffleModel, DistinguishedPrefix) {
  ModelParams p;
  p.q = 3;
  p.blocks = BlockStructure({1, 1, 1});
  p.columns = 6;
  p.shuffle = AllPermutationsShuffle{};
  p.distinguished_prefix = true;
  for (std::uint64_t s = 0; s < 100; ++s) {
    p.seed = s;
    const auto g = generate(p);
    EXPECT_EQ(std::set<Symbol>(g.truth.x.begin(), g.truth.x.end()).size(), 3u);
  }
  p.q = 2;
  EXPECT_THROW(p.validate(), InfeasibleParametersError);
}

TEST(ShuffleModel, ValidationErrors) {
  ModelParams p = two_block_params(3, 2, 2, 4, 0.0, 0.5, 0);
  p.noise_count = 5;
  EXPECT_THROW(p.validate(), InfeasibleParametersError);
  p = two_block_params(3, 2, 2, 4, 0.0, 0.5, 0);
  p.shuffle = ExplicitShuffle{{{Permutation::identity(2), 3}}};
  EXPECT_THROW(p.validate(), InfeasibleParametersError);
  p.shuffle = AllPermutationsShuffle{};
  p.columns = 3;
  EXPECT_THROW(p.validate(), InfeasibleParametersError);
  p.shuffle = RandomDistinctShuffle{{1, 1, 1}};
  EXPECT_THROW(p.validate(), InfeasibleParametersError);
}

TEST(ShuffleModel, IdentityNoiselessColumnsEqualTemplate) {
  ModelParams p;
  p.q = 11;
  p.blocks = BlockStructure({2, 3, 4});
  p.columns = 5;
  p.shuffle = ExplicitShuffle{{{Permutation::identity(3), 5}}};
  p.seed = 4;
  const auto g = generate(p);
  for (std::size_t n = 0; n < 5; ++n) {
    EXPECT_TRUE(std::equal(g.corpus.column(n).begin(), g.corpus.column(n).end(),
                           g.truth.x.begin()));
  }
}

TEST(ShuffleModel, NoiselessShiftedColumnIsCyclicShift) {
  const auto p = two_block_params(13, 4, 6, 8, 0.0, 0.5, 2);
  const auto g = generate(p);
  const auto pi = Permutation::cyclic_shift(10, 4);
  for (std::size_t n : g.truth.shifted_columns()) {
    const auto col = g.corpus.column(n);
    EXPECT_EQ(std::vector<Symbol>(col.begin(), col.end()), unshuffle::apply(pi, g.truth.x));
  }
}

TEST(ShuffleModel, MatchesStraightLineGenerator) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto p = two_block_params(3, 2, 4, 4, 0.5, 0.5, seed);
    const auto g = generate(p);
    const auto o = oracle::generate(p);
    EXPECT_EQ(g.truth.x, o.x);
    EXPECT_EQ(g.truth.noise_loci, o.loci);
    for (std::size_t n = 0; n < 4; ++n) {
      const auto col = g.corpus.column(n);
      EXPECT_EQ(std::vector<Symbol>(col.begin(), col.end()), o.columns[n]) << "seed " << seed;
    }

    ModelParams e;
    e.q = 5;
    e.blocks = BlockStructure({1, 2, 3});
    e.columns = 4;
    e.noise_count = 2;
    e.restricted_prefix = true;
    e.shuffle = ExplicitShuffle{{{Permutation::from_one_line({3, 1, 2}), 3},
                                 {Permutation::from_one_line({2, 3, 1}), 1}}};
    e.seed = seed;
    const auto ge = generate(e);
    const auto oe = oracle::generate(e);
    for (std::size_t n = 0; n < 4; ++n) {
      const auto col = ge.corpus.column(n);
      EXPECT_EQ(std::vector<Symbol>(col.begin(), col.end()), oe.columns[n]);
    }
  }
}

TEST(ShuffleModel, Deterministic) {
  ModelParams p;
  p.q = 256;
  p.blocks = BlockStructure({3, 4, 5});
  p.columns = 12;
  p.noise_count = 5;
  p.shuffle = RandomDistinctShuffle{{4, 4, 2, 2}};
  p.restricted_prefix = true;
  p.seed = 99;
  const auto a = generate(p);
  const auto b = generate(p);
  EXPECT_EQ(a.corpus, b.corpus);
  EXPECT_EQ(a.truth, b.truth);
  std::set<Permutation> distinct(a.truth.column_perms.begin(), a.truth.column_perms.end());
  EXPECT_EQ(distinct.size(), 4u);
}

TEST(ShuffleModel, CleanEntriesOfUnshiftedColumnsEqualTemplate) {
  const auto p = two_block_params(4, 5, 7, 30, 0.5, 0.4, 8);
  const auto g = generate(p);
  const auto mask = g.truth.noise_mask();
  for (std::size_t n : g.truth.columns_with(Permutation::identity(2))) {
    for (std::size_t l = 0; l < 12; ++l) {
      if (!mask[l]) EXPECT_EQ(g.corpus.at(l, n), g.truth.x[l]);
    }
  }
}

TEST(ShuffleModel, NoisyEntriesAreUniform) {
  // Chi-square with q - 1 = 4 degrees of freedom; 18.47 is the 0.999 quantile.
  const std::uint64_t q = 5;
  std::vector<double> counts(q, 0.0);
  std::size_t total = 0;
  for (std::uint64_t s = 0; total < 100000; ++s) {
    const auto p = two_block_params(q, 4, 6, 2000, 0.5, 0.0, s);
    const auto g = generate(p);
    for (std::size_t n = 0; n < g.corpus.columns() && total < 100000; ++n) {
      if (!g.truth.column_perms[n].is_identity()) continue;
      for (std::size_t l : g.truth.noise_loci) {
        counts[g.corpus.at(l, n)] += 1.0;
        ++total;
      }
    }
  }
  double chi2 = 0.0;
  const double expected = static_cast<double>(total) / q;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 18.47);
}

TEST(ApplyUnshuffle, IdentityAndRoundTrip) {
  const auto p = two_block_params(7, 3, 5, 6, 0.5, 0.5, 3);
  const auto g = generate(p);
  std::vector<Permutation> ids(6, Permutation::identity(8));
  EXPECT_EQ(apply_unshuffle(g.corpus, ids), g.corpus);

  Rng rng(1);
  std::vector<Permutation> perms, inverses;
  for (int n = 0; n < 6; ++n) {
    std::vector<Permutation::Index> im{0, 1, 2, 3, 4, 5, 6, 7};
    rng.shuffle(im);
    perms.push_back(Permutation::from_images(im));
    inverses.push_back(invert(perms.back()));
  }
  EXPECT_EQ(apply_unshuffle(apply_unshuffle(g.corpus, perms), inverses), g.corpus);
  EXPECT_THROW(apply_unshuffle(g.corpus, std::vector<Permutation>(6, Permutation::identity(3))),
               StructuralError);
}

TEST(ApplyUnshuffle, InverseCoherentAlignsCleanLoci) {
  ModelParams p;
  p.q = 50;
  p.blocks = BlockStructure({3, 4, 5});
  p.columns = 10;
  p.noise_count = 4;
  p.shuffle = RandomDistinctShuffle{{4, 3, 3}};
  p.seed = 12;
  const auto g = generate(p);
  const Corpus ref = unshuffled_reference(g.corpus, g.truth);
  const auto mask = g.truth.noise_mask();
  for (std::size_t l = 0; l < 12; ++l) {
    if (mask[l]) continue;
    for (std::size_t n = 0; n < 10; ++n) EXPECT_EQ(ref.at(l, n), g.truth.x[l]);
  }
}
