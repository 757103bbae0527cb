#include <benchmark/benchmark.h>

#include "dunkl/hypergeometric.hpp"
#include "dunkl/jack.hpp"
#include "dunkl/laws.hpp"
#include "dunkl/rng.hpp"
#include "dunkl/sde.hpp"

#include <memory>

using namespace dunkl;

static void BM_Philox(benchmark::State& st) {
    std::array<std::uint32_t, 4> ctr{0, 0, 0, 0};
    for (auto _ : st) {
        ++ctr[0];
        benchmark::DoNotOptimize(philox4x32(ctr, {17, 42}));
    }
}
BENCHMARK(BM_Philox);

static void BM_JackShellExact(benchmark::State& st) {
    const int n = int(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(jack_shell<double>(n, 0.7, 3));
}
BENCHMARK(BM_JackShellExact)->Arg(6)->Arg(10)->Arg(14);

static void BM_Hyperg0F0(benchmark::State& st) {
    SeriesSpec s;
    s.alpha = 0.8;
    s.max_degree = int(st.range(0));
    s.fixed_degree = true;
    Vec x{0.9, 0.4, -0.3}, y{1.2, 0.5, 0.1};
    hyperg_multi(s, x, y);   // warm the Jack table cache
    for (auto _ : st) benchmark::DoNotOptimize(hyperg_multi(s, x, y).value);
}
BENCHMARK(BM_Hyperg0F0)->Arg(10)->Arg(20)->Arg(30);

static void BM_TailQuadratureB2(benchmark::State& st) {
    auto b2 = RootSystem::build(Family::B, 2);
    for (auto _ : st)
        benchmark::DoNotOptimize(
            tail_quadrature(b2, Multiplicity::B(b2, 0.75, 0.75), Multiplicity::B(b2, 0.25, 0.25), {2.0, 1.0}, 0.6));
}
BENCHMARK(BM_TailQuadratureB2)->Unit(benchmark::kMillisecond);

static void BM_HittingPathsB2(benchmark::State& st) {
    auto b2 = std::make_shared<const RootSystem>(RootSystem::build(Family::B, 2));
    auto spec = radial_dunkl(b2, Multiplicity::B(*b2, 0.25, 0.75), {2.0, 1.0}, 1.0, 1e-3, 7);
    for (auto _ : st) benchmark::DoNotOptimize(hitting_time_mc(spec, 200, {0.5, 1.0}, 1).survival);
    st.SetItemsProcessed(st.iterations() * 200);
}
BENCHMARK(BM_HittingPathsB2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
