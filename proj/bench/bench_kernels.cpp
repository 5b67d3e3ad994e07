#include <benchmark/benchmark.h>

#include <vector>

#include "qshannon/cipher.hpp"
#include "qshannon/reliability.hpp"
#include "qshannon/states.hpp"
#include "qshannon/sweep.hpp"

using namespace qshannon;

namespace {

std::vector<double> rate_grid(std::size_t n) {
    std::vector<double> rates(n);
    for (std::size_t i = 0; i < n; ++i) rates[i] = 1.2 * static_cast<double>(i) / static_cast<double>(n);
    return rates;
}

template <bool Parallel>
void exponent_sweep(benchmark::State& state) {
    const Constellation c = psk_constellation(8, 2.0);
    const std::vector<double> rates = rate_grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const auto point = [&](std::size_t i) { return reliability_quantum(c, rates[i]); };
        if constexpr (Parallel) {
            benchmark::DoNotOptimize(sweep::map_parallel(rates.size(), point));
        } else {
            benchmark::DoNotOptimize(sweep::map_serial(rates.size(), point));
        }
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ExponentSerial(benchmark::State& state) { exponent_sweep<false>(state); }
void BM_ExponentParallel(benchmark::State& state) { exponent_sweep<true>(state); }

CipherParams cipher_params() {
    CipherParams p;
    p.m = 64;
    p.mean_photons = 1.0;
    return p;
}

void BM_MonteCarloSerial(benchmark::State& state) {
    const CipherParams p = cipher_params();
    for (auto _ : state) {
        benchmark::DoNotOptimize(bob_errors_monte_carlo_serial(p, static_cast<std::size_t>(state.range(0)), 7));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MonteCarloParallel(benchmark::State& state) {
    const CipherParams p = cipher_params();
    for (auto _ : state) {
        benchmark::DoNotOptimize(bob_errors_monte_carlo(p, static_cast<std::size_t>(state.range(0)), 7, 0));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ExponentSerial)->Arg(64)->Arg(512);
BENCHMARK(BM_ExponentParallel)->Arg(64)->Arg(512);
BENCHMARK(BM_MonteCarloSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_MonteCarloParallel)->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();
