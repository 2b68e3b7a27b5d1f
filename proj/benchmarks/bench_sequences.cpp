#include <random>

#include <benchmark/benchmark.h>

#include "hyperforge/finite_seq.hpp"
#include "hyperforge/spaces.hpp"

namespace hf = hyperforge;

namespace {

hf::FiniteSeq dense_seq(std::size_t len, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  hf::FiniteSeq x;
  for (std::size_t n = 0; n < len; ++n) x.set(n, hf::WideComplex(u(rng), u(rng)));
  return x;
}

void BM_CauchyProduct(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  const hf::FiniteSeq x = dense_seq(len, 1), y = dense_seq(len, 2);
  for (auto _ : state) benchmark::DoNotOptimize(hf::cauchy_product(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CauchyProduct)->RangeMultiplier(4)->Range(8, 512)->Complexity();

void BM_CauchyPower(benchmark::State& state) {
  const hf::FiniteSeq x = dense_seq(32, 3);
  const auto m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hf::cauchy_power(x, m));
}
BENCHMARK(BM_CauchyPower)->DenseRange(2, 6, 2);

void BM_Seminorm(benchmark::State& state) {
  const hf::FiniteSeq x = dense_seq(static_cast<std::size_t>(state.range(0)), 4);
  const hf::SpaceSpec space = hf::SpaceSpec::make(hf::SpaceId::entire_cauchy);
  for (auto _ : state) benchmark::DoNotOptimize(hf::seminorm_eval(space, 3, x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Seminorm)->RangeMultiplier(4)->Range(8, 2048)->Complexity();

void BM_SeminormLp(benchmark::State& state) {
  const hf::FiniteSeq x = dense_seq(static_cast<std::size_t>(state.range(0)), 5);
  const hf::SpaceSpec space = hf::SpaceSpec::make(hf::SpaceId::lp, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(hf::seminorm_eval(space, 1, x));
}
BENCHMARK(BM_SeminormLp)->Arg(64)->Arg(1024);

}  // namespace
