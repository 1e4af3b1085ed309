#include <cstdint>
#include <numeric>
#include <vector>

#include <benchmark/benchmark.h>

#include "unshuffle/permutation.hpp"
#include "unshuffle/shuffle_model.hpp"
#include "unshuffle/unshuffle2.hpp"
#include "unshuffle/unshuffle_m.hpp"

namespace {

using namespace unshuffle;

ModelParams six_block_params(std::uint64_t seed) {
  std::vector<std::size_t> mult{16, 8, 8, 4, 4, 4, 4};
  mult.insert(mult.end(), 8, 2);
  mult.insert(mult.end(), 16, 1);
  ModelParams p;
  p.q = 256;
  p.blocks = BlockStructure({11, 11, 12, 12, 16, 20});
  p.columns = 80;
  p.noise_count = count_from_fraction(0.5, p.blocks.total());
  p.shuffle = RandomDistinctShuffle{mult};
  p.restricted_prefix = true;
  p.seed = seed;
  return p;
}

void BM_CoherentApply(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  std::vector<std::size_t> lengths(m, 16);
  const BlockStructure blocks(lengths);
  std::vector<std::int64_t> one_line(m);
  std::iota(one_line.rbegin(), one_line.rend(), 1);
  const auto sigma = Permutation::from_one_line(one_line);
  std::vector<Symbol> v(blocks.total());
  std::iota(v.begin(), v.end(), Symbol{0});
  for (auto _ : state) {
    const auto p = coherent_block_permutation(sigma, blocks);
    benchmark::DoNotOptimize(unshuffle::apply(p, v));
  }
}
BENCHMARK(BM_CoherentApply)->Arg(2)->Arg(6)->Arg(24);

void BM_GenerateTwoBlock(benchmark::State& state) {
  const auto columns = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate(two_block_params(3, 40, 60, columns, 0.5, 0.3, seed++)));
  }
}
BENCHMARK(BM_GenerateTwoBlock)->Arg(80)->Arg(800);

void BM_Unshuffle2(benchmark::State& state) {
  const auto columns = static_cast<std::size_t>(state.range(0));
  const auto g = generate(two_block_params(3, 40, 60, columns, 0.5, 0.3, 7));
  for (auto _ : state) benchmark::DoNotOptimize(unshuffle2(g.corpus));
}
BENCHMARK(BM_Unshuffle2)->Arg(80)->Arg(800);

void BM_WeightedShiftAlign(benchmark::State& state) {
  const auto g = generate(six_block_params(3));
  const AlignConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(weighted_shift_align(g.corpus, 0, config));
}
BENCHMARK(BM_WeightedShiftAlign);

void BM_UnshuffleM(benchmark::State& state) {
  const auto g = generate(six_block_params(3));
  for (auto _ : state) benchmark::DoNotOptimize(unshuffle_m(g.corpus));
}
BENCHMARK(BM_UnshuffleM)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
