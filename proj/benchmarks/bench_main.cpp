#include "dampspec/dispersion.hpp"
#include "dampspec/oscillator.hpp"
#include "dampspec/pencil.hpp"
#include "dampspec/polynomial.hpp"
#include "dampspec/quasimode.hpp"
#include "dampspec/tridiagonal.hpp"

#include <benchmark/benchmark.h>

using namespace dampspec;

static void BM_SturmBisection(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const auto m = build_oscillator_matrix({1, 10.0, N, 10});
    for (auto _ : state) benchmark::DoNotOptimize(eig_tridiagonal_lowest(m, 11));
    state.SetComplexityN(N);
}
BENCHMARK(BM_SturmBisection)->RangeMultiplier(4)->Range(1000, 64000)->Complexity();

static void BM_AberthLine(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto poly = line_char_poly({n, 3.0, 1.0}, 7.5);
    for (auto _ : state) benchmark::DoNotOptimize(roots_all(poly));
}
BENCHMARK(BM_AberthLine)->DenseRange(1, 8);

static void BM_TridiagonalLU(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const auto p = assemble({1, 0, 0}, 10.0, N);
    const cplx lambda{-0.63, 1.09};
    for (auto _ : state) benchmark::DoNotOptimize(factor(p, lambda));
    state.SetComplexityN(N);
}
BENCHMARK(BM_TridiagonalLU)->RangeMultiplier(4)->Range(1000, 64000)->Complexity();

static void BM_SigmaMin(benchmark::State& state) {
    const auto p = assemble({1, 0, 0}, 10.0, 4000);
    for (auto _ : state) benchmark::DoNotOptimize(smallest_singular_value(p, cplx{-0.63, 1.09}));
}
BENCHMARK(BM_SigmaMin);

static void BM_ContourCount(benchmark::State& state) {
    const auto p = assemble({1, 0, 0}, 10.0, 4000);
    const ContourSpec box{-1.8, -0.2, 0.6, 2.7, static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(count_eigs_contour(p, box));
}
BENCHMARK(BM_ContourCount)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_QuasimodeBuild(benchmark::State& state) {
    const auto probe = make_probe(-1.0, Coefficient::monomial_damping(1, 0), Coefficient::constant(0.0),
                                  static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(build_quasimode(probe));
}
BENCHMARK(BM_QuasimodeBuild)->RangeMultiplier(2)->Range(10, 80)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
