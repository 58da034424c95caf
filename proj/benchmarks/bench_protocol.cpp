#include <benchmark/benchmark.h>

#include <sskg/probcore.hpp>
#include <sskg/protocol.hpp>
#include <sskg/sources.hpp>

namespace {

void BM_protocol_exact(benchmark::State& state) {
    const auto j = sskg::bsc_cascade(0.1, 0.2);
    const sskg::CodebookSpec spec(std::size_t(state.range(0)), 0.5, 0.5, 2, 1);
    const auto cb = sskg::generate_codebook(spec, sskg::FiniteDist::uniform(2));
    for (auto _ : state) benchmark::DoNotOptimize(sskg::run_protocol_exact(j, cb));
}
BENCHMARK(BM_protocol_exact)->Arg(2)->Arg(4)->Arg(6);

void BM_protocol_mc(benchmark::State& state) {
    const auto j = sskg::bsc_cascade(0.1, 0.2);
    const sskg::CodebookSpec spec(8, 0.5, 0.5, 2, 1);
    const auto cb = sskg::generate_codebook(spec, sskg::FiniteDist::uniform(2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sskg::run_protocol_mc(j, cb, std::size_t(state.range(0)), 9));
    }
}
BENCHMARK(BM_protocol_mc)->Arg(1000)->Arg(10000);

void BM_resolvability_exact(benchmark::State& state) {
    const auto ch = sskg::zf_channel(sskg::bsc_cascade(0.1, 0.2));
    const auto pU = sskg::FiniteDist::uniform(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sskg::resolvability_rhs_exact(pU, ch, 4, std::size_t(state.range(0))));
    }
}
BENCHMARK(BM_resolvability_exact)->Arg(2)->Arg(4)->Arg(6);

void BM_d1_d2_split(benchmark::State& state) {
    const auto ch = sskg::zf_channel(sskg::bsc_cascade(0.1, 0.2));
    const auto pU = sskg::FiniteDist::uniform(2);
    const sskg::TypicalityParams params(0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sskg::d1_d2_split(pU, ch, 4, std::size_t(state.range(0)), params));
    }
}
BENCHMARK(BM_d1_d2_split)->Arg(2)->Arg(4)->Arg(6);

} // namespace
