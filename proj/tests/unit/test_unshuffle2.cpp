#include <gtest/gtest.h>

#include "oracles.hpp"
#include "unshuffle/scoring.hpp"
#include "unshuffle/shuffle_model.hpp"
#include "unshuffle/unshuffle2.hpp"

using namespace unshuffle;

namespace {

ModelParams fig1(std::uint64_t seed) { return two_block_params(3, 40, 60, 80, 0.5, 0.3, seed); }

std::vector<std::size_t> complement(const std::vector<std::size_t>& s, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::binary_search(s.begin(), s.end(), i)) out.push_back(i);
  }
  return out;
}

bool contains_all(const std::vector<std::size_t>& super, const std::vector<std::size_t>& sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

// q=5, L=6, L_1=2, N=6, noiseless; columns 1, 3, 4 shifted.
Corpus hand_corpus() {
  const std::vector<Symbol> x{0, 1, 2, 3, 4, 0};
  const std::vector<Symbol> s{2, 3, 4, 0, 0, 1};
  return Corpus::from_columns({x, s, x, s, s, x}, 5);
}

}  // namespace

TEST(PartialTuple, UndefinedNeverMatches) {
  const std::optional<Symbol> none;
  EXPECT_FALSE(PartialTuple::matches(none, none));
  EXPECT_FALSE(PartialTuple::matches(none, Symbol{0}));
  EXPECT_TRUE(PartialTuple::matches(std::optional<Symbol>(3), Symbol{3}));
  EXPECT_EQ(PartialTuple(4).defined_count(), 0u);
  const std::vector<Symbol> v{1, 2};
  EXPECT_EQ(PartialTuple::from_values(v).defined_count(), 2u);
}

TEST(EstimateN, HandBuiltExact) {
  EXPECT_EQ(estimate_n(hand_corpus()), (std::vector<std::size_t>{1, 3, 4}));
}

TEST(EstimateN, ColumnZeroNeverIncluded) {
  // Column 0 shifted: the estimate is the other side.
  const std::vector<Symbol> x{0, 1, 2, 3};
  const std::vector<Symbol> s{2, 3, 0, 1};
  const Corpus c = Corpus::from_columns({s, x, s, x}, 4);
  EXPECT_EQ(estimate_n(c), (std::vector<std::size_t>{1, 3}));
}

TEST(EstimateN, NoShuffleIsNotIdentifiable) {
  auto p = two_block_params(5, 3, 4, 10, 0.0, 0.0, 1);
  EXPECT_THROW(estimate_n(generate(p).corpus), NotIdentifiableError);
  EXPECT_THROW(unshuffle2(generate(p).corpus), NotIdentifiableError);
}

TEST(EstimateN, Fig1AtLeast95) {
  std::size_t ok = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto g = generate(fig1(s));
    const auto e = two_block_expectation(g.truth);
    ASSERT_TRUE(e.has_value());
    if (estimate_n(g.corpus) == e->n_set) ++ok;
  }
  EXPECT_GE(ok, 95u);
}

TEST(EstimateN, QTwoUsesSameRule) {
  std::size_t ok = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = generate(two_block_params(2, 40, 60, 80, 0.0, 0.3, s));
    if (estimate_n(g.corpus) == two_block_expectation(g.truth)->n_set) ++ok;
  }
  EXPECT_GE(ok, 15u);
}

TEST(EstimateLSets, NoiselessAllRows) {
  const Corpus c = hand_corpus();
  const auto l = estimate_l_sets(c, estimate_n(c));
  EXPECT_EQ(l.unshifted.size(), 6u);
  EXPECT_EQ(l.shifted.size(), 6u);
}

TEST(EstimateLSets, InclusionsHoldWhenNIsCorrect) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto g = generate(two_block_params(3, 8, 12, 20, 0.5, 0.3, s));
    const auto e = two_block_expectation(g.truth);
    const std::size_t L = 20;
    const auto l = estimate_l_sets(g.corpus, e->n_set);
    const auto clean = complement(e->noise_loci, L);
    EXPECT_TRUE(contains_all(l.unshifted, clean)) << "seed " << s;
    // Shifted columns show loci l with (l + l1) mod L clean.
    std::vector<std::size_t> clean_shifted;
    for (std::size_t r = 0; r < L; ++r) {
      if (std::binary_search(clean.begin(), clean.end(), (r + e->l1) % L)) {
        clean_shifted.push_back(r);
      }
    }
    EXPECT_TRUE(contains_all(l.shifted, clean_shifted)) << "seed " << s;
  }
}

TEST(PartialTemplates, NoiselessMatchesTemplate) {
  const auto g = generate(two_block_params(11, 4, 5, 10, 0.0, 0.4, 9));
  const auto e = two_block_expectation(g.truth);
  const auto l = estimate_l_sets(g.corpus, e->n_set);
  const auto [a0, a1] = partial_templates(g.corpus, e->n_set, l);
  const auto col0 = g.corpus.column(0);
  const auto shifted = g.corpus.column(e->n_set.front());
  for (std::size_t r = 0; r < 9; ++r) {
    ASSERT_TRUE(a0[r].has_value());
    ASSERT_TRUE(a1[r].has_value());
    EXPECT_EQ(*a0[r], col0[r]);
    EXPECT_EQ(*a1[r], shifted[r]);
  }
}

TEST(PartialTemplates, UndefinedOutsideLSets) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto g = generate(fig1(s));
    const auto e = two_block_expectation(g.truth);
    const auto l = estimate_l_sets(g.corpus, e->n_set);
    const auto [a0, a1] = partial_templates(g.corpus, e->n_set, l);
    std::size_t defined0 = 0;
    for (std::size_t r = 0; r < 100; ++r) {
      const bool in0 = std::binary_search(l.unshifted.begin(), l.unshifted.end(), r);
      EXPECT_EQ(a0[r].has_value(), in0);
      defined0 += in0;
    }
    EXPECT_EQ(a0.defined_count(), defined0);
    // Agreement with the clean rows of column 0.
    const auto clean = complement(e->noise_loci, 100);
    for (std::size_t r : clean) EXPECT_EQ(*a0[r], g.corpus.at(r, 0));
  }
}

TEST(AlignCyclic, RecoversShift) {
  Rng rng(4);
  for (std::size_t s = 0; s < 12; ++s) {
    std::vector<Symbol> v(12);
    for (auto& e : v) e = rng.below(50);
    const auto shifted = unshuffle::apply(Permutation::cyclic_shift(12, s), v);
    const auto r = align_cyclic(PartialTuple::from_values(v), PartialTuple::from_values(shifted));
    EXPECT_EQ(r.shift, s);
    EXPECT_EQ(r.score, 12u);
  }
}

TEST(AlignCyclic, AllUndefined) {
  const auto r = align_cyclic(PartialTuple(7), PartialTuple(7));
  EXPECT_EQ(r.shift, 0u);
  EXPECT_EQ(r.score, 0u);
}

TEST(AlignCyclic, LengthMismatch) {
  EXPECT_THROW(align_cyclic(PartialTuple(3), PartialTuple(4)), StructuralError);
}

TEST(Unshuffle2, HandBuiltMatchesExhaustiveShift) {
  const Corpus c = hand_corpus();
  const auto r = unshuffle2(c);
  EXPECT_EQ(r.n_hat, (std::vector<std::size_t>{1, 3, 4}));
  EXPECT_EQ(r.l1_hat, oracle::best_shift_exhaustive(c, r.n_hat));
  EXPECT_EQ(r.l1_hat, 2u);
  EXPECT_EQ(r.l2_hat, 4u);
  for (std::size_t n = 0; n < 6; ++n) {
    EXPECT_TRUE(std::equal(r.aligned.column(n).begin(), r.aligned.column(n).end(),
                           c.column(0).begin()));
  }
}

TEST(Unshuffle2, ResultInvariants) {
  const auto g = generate(fig1(2));
  const auto r = unshuffle2(g.corpus);
  EXPECT_EQ(r.pi_hat, coherent_block_permutation(Permutation::from_one_line({2, 1}),
                                                 BlockStructure({r.l1_hat, r.l2_hat})));
  EXPECT_EQ(r.l1_hat + r.l2_hat, 100u);
  EXPECT_EQ(r.aligned, apply_unshuffle(g.corpus, r.column_perms));
  for (std::size_t n = 0; n < 80; ++n) {
    const bool in = std::binary_search(r.n_hat.begin(), r.n_hat.end(), n);
    EXPECT_EQ(r.column_perms[n].is_identity(), !in);
  }
  EXPECT_EQ(r.noise_loci_hat, complement(r.l0_hat, 100));
}

TEST(Unshuffle2, Fig1AtLeast95) {
  std::size_t ok = 0;
  std::size_t shift40 = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto g = generate(fig1(s));
    const auto r = unshuffle2(g.corpus);
    ok += exact_two_recovery(r, g.truth);
    const bool col0_shifted = g.truth.column_perms[0] != Permutation::identity(2);
    shift40 += (col0_shifted ? r.l2_hat : r.l1_hat) == 40;
  }
  EXPECT_GE(ok, 95u);
  EXPECT_GE(shift40, 95u);
}

TEST(Unshuffle2, AlignedEqualsReferenceOnSuccess) {
  const auto g = generate(fig1(11));
  const auto r = unshuffle2(g.corpus);
  ASSERT_TRUE(exact_two_recovery(r, g.truth));
  // Every column ends up in the frame of column 0.
  for (std::size_t n = 0; n < 80; ++n) {
    for (std::size_t l : complement(r.noise_loci_hat, 100)) {
      EXPECT_EQ(r.aligned.at(l, n), r.aligned.at(l, 0));
    }
  }
}

TEST(Unshuffle2, GaugeInvariance) {
  const auto g = generate(fig1(5));
  const auto r = unshuffle2(g.corpus);
  const auto other = complement(r.n_hat, 80);
  const auto swapped = unshuffle2_given(g.corpus, other);
  EXPECT_EQ(swapped.l1_hat, r.l2_hat);
  // Aligned corpora agree up to one global cyclic shift.
  const auto shift = Permutation::cyclic_shift(100, r.l1_hat);
  for (std::size_t n = 0; n < 80; ++n) {
    const std::vector<Symbol> a(r.aligned.column(n).begin(), r.aligned.column(n).end());
    const std::vector<Symbol> b(swapped.aligned.column(n).begin(),
                                swapped.aligned.column(n).end());
    EXPECT_EQ(unshuffle::apply(shift, a), b);
  }
}

TEST(Unshuffle2, ScoreAtLeastCleanRows) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = generate(fig1(s));
    const auto e = two_block_expectation(g.truth);
    const auto r = unshuffle2_given(g.corpus, e->n_set);
    std::vector<bool> bad(100, false);
    for (std::size_t l : e->noise_loci) {
      bad[l] = true;
      bad[(l + 100 - e->l1) % 100] = true;
    }
    const auto clean = static_cast<std::size_t>(std::count(bad.begin(), bad.end(), false));
    EXPECT_GE(r.score, clean);
  }
}
