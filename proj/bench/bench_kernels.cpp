// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "qinv/jones.hpp"
#include "qinv/kernels.hpp"
#include "qinv/skein.hpp"
#include "qinv/tvstate.hpp"

using namespace qinv;

namespace {

std::vector<mpz_class> random_poly(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<mpz_class> v(n);
    for (auto& c : v) {
        c = static_cast<long>(rng() >> 2);
        c *= static_cast<long>(rng() >> 2);
    }
    return v;
}

std::vector<std::int64_t> random_mod(std::size_t n, std::int64_t p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> v(n);
    for (auto& c : v) c = static_cast<std::int64_t>(rng() % p);
    return v;
}

void BM_Convolve(benchmark::State& state, Exec exec) {
    const auto a = random_poly(state.range(0), 1), b = random_poly(state.range(0), 2);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::convolve(a, b, exec));
}

void BM_ConvolveMod(benchmark::State& state, Exec exec) {
    const auto a = random_mod(state.range(0), 10007, 3), b = random_mod(state.range(0), 10007, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(exec == Exec::serial ? kernels::convolve_mod_serial(a, b, 10007)
                                                      : kernels::convolve_mod_parallel(a, b, 10007));
}

void BM_TuraevViro(benchmark::State& state, Exec exec) {
    const auto tri = lens_triangulation(static_cast<int>(state.range(0)), 1);
    const auto& sp = SkeinParams::get(5);
    for (auto _ : state) benchmark::DoNotOptimize(tv(tri, sp, exec));
}

void BM_Bracket(benchmark::State& state, Exec exec) {
    std::vector<int> word;
    for (int i = 0; i < state.range(0); ++i) word.push_back(i % 2 ? -2 : 1);
    const auto pd = pd_from_braid(3, word);
    for (auto _ : state) benchmark::DoNotOptimize(kauffman_bracket_states(pd, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Convolve, serial, Exec::serial)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(BM_Convolve, parallel, Exec::parallel)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(BM_ConvolveMod, serial, Exec::serial)->Arg(1024)->Arg(8192);
BENCHMARK_CAPTURE(BM_ConvolveMod, parallel, Exec::parallel)->Arg(1024)->Arg(8192);
BENCHMARK_CAPTURE(BM_TuraevViro, serial, Exec::serial)->Arg(3)->Arg(5);
BENCHMARK_CAPTURE(BM_TuraevViro, parallel, Exec::parallel)->Arg(3)->Arg(5);
BENCHMARK_CAPTURE(BM_Bracket, serial, Exec::serial)->Arg(10)->Arg(14);
BENCHMARK_CAPTURE(BM_Bracket, parallel, Exec::parallel)->Arg(10)->Arg(14);

BENCHMARK_MAIN();
