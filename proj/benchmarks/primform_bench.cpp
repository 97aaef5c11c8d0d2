#include <benchmark/benchmark.h>

#include "primform/brieskorn.hpp"
#include "primform/descendants.hpp"
#include "primform/frobenius.hpp"
#include "primform/milnor_ring.hpp"

using namespace primform;

static void BM_LaurentMultiply(benchmark::State& state) {
  LaurentPoly a = LaurentPoly::parse("z^3 + 2*t1*z - q/z + 1/3*t0");
  LaurentPoly p = 1;
  for (int i = 0; i < state.range(0); ++i) p *= a;
  for (auto _ : state) benchmark::DoNotOptimize(p * a);
}
BENCHMARK(BM_LaurentMultiply)->Arg(2)->Arg(4)->Arg(8);

static void BM_MilnorRing(benchmark::State& state) {
  LGSystem lg = *builtin_system("a" + std::to_string(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(MilnorRing::build(lg).gram());
}
BENCHMARK(BM_MilnorRing)->DenseRange(2, 6, 2);

static void BM_BuildFrobenius(benchmark::State& state) {
  LGSystem lg = *builtin_system(state.range(0) == 0 ? "cp1" : "a" + std::to_string(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_frobenius(lg));
}
BENCHMARK(BM_BuildFrobenius)->Arg(0)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_VerifyPrimitiveForm(benchmark::State& state) {
  LGSystem lg = *builtin_system(state.range(0) == 0 ? "cp1" : "a" + std::to_string(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_primitive_form(lg));
}
BENCHMARK(BM_VerifyPrimitiveForm)->Arg(0)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_MirrorCompare(benchmark::State& state) {
  FrobeniusData fd = build_frobenius(*builtin_system("cp1"));
  Caps caps{5, 3, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    GravitationalDescendants b(fd, caps.max_degree);
    CP1GromovWitten a;
    benchmark::DoNotOptimize(compare_free_energies(b, a, caps));
  }
}
BENCHMARK(BM_MirrorCompare)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
