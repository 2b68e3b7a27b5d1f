#include <benchmark/benchmark.h>

#include "hyperforge/building_block.hpp"
#include "hyperforge/cauchy_construct.hpp"
#include "hyperforge/coord_construct.hpp"
#include "hyperforge/targets.hpp"

namespace hf = hyperforge;

namespace {

void BM_BuildingBlock(benchmark::State& state) {
  const hf::SpaceSpec space = hf::SpaceSpec::make(hf::SpaceId::entire_cauchy);
  const hf::FiniteSeq y = hf::FiniteSeq::from_values({1, 1});
  const auto m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hf::solve_building_block(space, hf::Weight::maclane(), y, m, 1, 0, 0.5));
  }
}
BENCHMARK(BM_BuildingBlock)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_CoordBuild(benchmark::State& state) {
  const hf::SpaceSpec space = hf::SpaceSpec::make(hf::SpaceId::lp, 1.0);
  const auto rounds = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hf::build_generator(space, hf::Weight::constant(2.0), hf::default_base_targets(), rounds));
  }
}
BENCHMARK(BM_CoordBuild)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_CauchyBuild(benchmark::State& state) {
  const hf::SpaceSpec space = hf::SpaceSpec::make(hf::SpaceId::l1);
  const auto rounds = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        hf::build_generator_cauchy(space, hf::Weight::constant(2.0), hf::default_base_targets(), rounds));
  }
}
BENCHMARK(BM_CauchyBuild)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
