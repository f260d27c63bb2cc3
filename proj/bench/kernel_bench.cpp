// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "histomark/codec.hpp"
#include "histomark/gaussian.hpp"
#include "histomark/histogram.hpp"

using namespace histomark;

namespace {

Plane noise_plane(int n) {
    std::mt19937_64 rng(1);
    Plane p(n, n);
    for (double& v : p.values()) v = static_cast<double>(40 + rng() % 180);
    return p;
}

void BM_Filter(benchmark::State& st) {
    const Plane p = noise_plane(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(filter(p, 1.0));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(p.size()));
}

void BM_FilterReference(benchmark::State& st) {
    const Plane p = noise_plane(static_cast<int>(st.range(0)));
    const GaussianKernel k = make_kernel(1.0);
    for (auto _ : st) benchmark::DoNotOptimize(filter_reference(p, k));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(p.size()));
}

void BM_BinCounts(benchmark::State& st) {
    const Plane p = noise_plane(static_cast<int>(st.range(0)));
    const HistogramSpec s = HistogramSpec::from_mean(compute_mean(p), 0.6, 2.0);
    for (auto _ : st) benchmark::DoNotOptimize(bin_counts(p, s));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(p.size()));
}

void BM_BinCountsReference(benchmark::State& st) {
    const Plane p = noise_plane(static_cast<int>(st.range(0)));
    const HistogramSpec s = HistogramSpec::from_mean(compute_mean(p), 0.6, 2.0);
    for (auto _ : st) benchmark::DoNotOptimize(bin_counts_reference(p, s));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(p.size()));
}

void BM_Embed(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    Plane p(n, n);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) p.at(x, y) = static_cast<double>(60 + (x + 2 * y) * 120 / (3 * n));
    const GrayImage img = quantize(filter(p, 4.0));
    const WatermarkKey key{};
    for (auto _ : st) benchmark::DoNotOptimize(embed(img, key, Nonce{}, EmbedParams{}));
}

}  // namespace

BENCHMARK(BM_Filter)->Arg(256)->Arg(1024);
BENCHMARK(BM_FilterReference)->Arg(256)->Arg(1024);
BENCHMARK(BM_BinCounts)->Arg(256)->Arg(1024);
BENCHMARK(BM_BinCountsReference)->Arg(256)->Arg(1024);
BENCHMARK(BM_Embed)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
