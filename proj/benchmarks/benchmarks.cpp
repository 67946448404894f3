#include <benchmark/benchmark.h>

#include "symed/compressor.hpp"
#include "symed/metrics.hpp"
#include "symed/pipeline.hpp"
#include "symed/synthetic.hpp"
#include "symed/transport.hpp"

namespace {

using namespace symed;

// Per-point cost of the online compressor; constant work per sample
// means total time scales linearly with the stream length.
void BM_CompressorFeed(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto series = synthetic::randomPiecewiseLinear(n, 7);
    for (auto _ : state) {
        Compressor compressor({.tol = 0.5});
        for (double t : series) {
            benchmark::DoNotOptimize(compressor.feed(t));
        }
        benchmark::DoNotOptimize(compressor.finish());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CompressorFeed)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_Dtw(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = synthetic::sine(n);
    const auto b = synthetic::randomWalk(n, 3, 0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dtw(a, b));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dtw)->RangeMultiplier(2)->Range(1 << 6, 1 << 10)->Complexity();

void BM_FrameCodec(benchmark::State& state) {
    const Frame frame{FrameKind::point, 7, 123456789, 3.14159};
    for (auto _ : state) {
        benchmark::DoNotOptimize(decodeFrame(encodeFrame(frame)));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_FrameCodec);

void BM_SymedPipeline(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto series = synthetic::randomPiecewiseLinear(n, 11);
    const RunConfig config{.tol = 0.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(runSymedMonolithic(series, config));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SymedPipeline)->Arg(1 << 10)->Arg(1 << 12);

void BM_AbbaOffline(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto series = synthetic::randomPiecewiseLinear(n, 11);
    const RunConfig config{.tol = 0.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(runAbbaOffline(series, config));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_AbbaOffline)->Arg(1 << 10)->Arg(1 << 12);

} // namespace

BENCHMARK_MAIN();
