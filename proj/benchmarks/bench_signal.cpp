#include <benchmark/benchmark.h>

#include <numbers>

#include "alkspec/estimation.hpp"
#include "alkspec/oracle.hpp"
#include "alkspec/ramsey.hpp"

namespace {

const alkspec::Spectrum kSpectrum{0.7, 0.2, 0.1};

alkspec::RamseyParams params(int n, int points) {
    alkspec::RamseyParams r;
    r.n = n;
    r.beta = std::numbers::pi / 2;
    r.U = 1.0;
    for (int i = 0; i < points; ++i) r.taus.push_back(0.01 * i);
    return r;
}

void BM_ExactSignal(benchmark::State& state) {
    const auto r = params(static_cast<int>(state.range(0)), 200);
    for (auto _ : state) benchmark::DoNotOptimize(alkspec::exact_signal(r, kSpectrum));
}
BENCHMARK(BM_ExactSignal)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_TruncatedSignal(benchmark::State& state) {
    const auto r = params(static_cast<int>(state.range(0)), 200);
    for (auto _ : state) benchmark::DoNotOptimize(alkspec::truncated_signal(r, kSpectrum, 5.0));
}
BENCHMARK(BM_TruncatedSignal)->Arg(10)->Arg(30)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_AsymptoticSignal(benchmark::State& state) {
    const auto r = params(100, 200);
    for (auto _ : state) benchmark::DoNotOptimize(alkspec::asymptotic_signal(r, kSpectrum));
}
BENCHMARK(BM_AsymptoticSignal);

void BM_EydModelBuild(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(alkspec::EydModel(n, 3));
}
BENCHMARK(BM_EydModelBuild)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_EydModelEvaluate(benchmark::State& state) {
    const alkspec::EydModel model(30, 3);
    for (auto _ : state) benchmark::DoNotOptimize(model.distribution(kSpectrum));
}
BENCHMARK(BM_EydModelEvaluate)->Unit(benchmark::kMicrosecond);

void BM_SchurProbabilities(benchmark::State& state) {
    const auto diagrams = alkspec::enumerate_diagrams(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(alkspec::eyd_log_probabilities_schur(diagrams, kSpectrum));
}
BENCHMARK(BM_SchurProbabilities)->Arg(30)->Arg(60)->Unit(benchmark::kMicrosecond);

void BM_SwapSumSectors(benchmark::State& state) {
    const int l = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(alkspec::swap_sum_trace_Bw(l, 0, kSpectrum, 0.3));
}
BENCHMARK(BM_SwapSumSectors)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_FullHilbert(benchmark::State& state) {
    const auto r = params(static_cast<int>(state.range(0)), 50);
    const alkspec::Spectrum p{0.6, 0.4};
    for (auto _ : state) benchmark::DoNotOptimize(alkspec::full_hilbert_signal(r, p));
}
BENCHMARK(BM_FullHilbert)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_FitNoiseless(benchmark::State& state) {
    auto r = params(20, 0);
    for (int i = 1; i <= 30; ++i) r.taus.push_back(0.01 * i);
    const auto records = alkspec::noiseless_measurements(r, kSpectrum, 100);
    for (auto _ : state) benchmark::DoNotOptimize(alkspec::fit_spectrum(records, r, 3));
}
BENCHMARK(BM_FitNoiseless)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
