#include <benchmark/benchmark.h>

#include <sskg/degrade.hpp>
#include <sskg/probcore.hpp>
#include <sskg/rng.hpp>
#include <sskg/sources.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace {

sskg::JointDist3 random_markov(std::size_t k, std::uint64_t seed) {
    sskg::Rng rng(seed);
    auto row = [&] {
        std::vector<double> r(k);
        double total = 0.0;
        for (auto& v : r) {
            v = -std::log(1.0 - rng.uniform01());
            total += v;
        }
        for (auto& v : r) v /= total;
        return r;
    };
    const auto px = row();
    std::vector<std::vector<double>> w1, w2;
    for (std::size_t i = 0; i < k; ++i) {
        w1.push_back(row());
        w2.push_back(row());
    }
    std::vector<double> cells(k * k * k);
    for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y)
            for (std::size_t z = 0; z < k; ++z)
                cells[(x * k + y) * k + z] = px[x] * w1[x][y] * w2[y][z];
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i) labels.push_back(std::to_string(i));
    return sskg::JointDist3(labels, labels, labels, cells);
}

void BM_markov_test(benchmark::State& state) {
    const auto j = random_markov(std::size_t(state.range(0)), 11);
    for (auto _ : state) benchmark::DoNotOptimize(sskg::markov_test(j));
}
BENCHMARK(BM_markov_test)->Arg(2)->Arg(3)->Arg(4);

void BM_degradedness_lp(benchmark::State& state) {
    const auto j = random_markov(std::size_t(state.range(0)), 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sskg::stochastic_degradedness_test(j));
    }
}
BENCHMARK(BM_degradedness_lp)->Arg(2)->Arg(3)->Arg(4);

void BM_cwtc_build(benchmark::State& state) {
    const auto j = random_markov(std::size_t(state.range(0)), 11);
    const auto u = sskg::FiniteDist::uniform(j.nx());
    for (auto _ : state) benchmark::DoNotOptimize(sskg::cwtc_build(j, u));
}
BENCHMARK(BM_cwtc_build)->Arg(2)->Arg(3)->Arg(4);

void BM_construct_coupling(benchmark::State& state) {
    const sskg::NakagamiSpec strong(1.0, 3.0), weak(1.0, 2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sskg::construct_coupling(strong, weak, std::size_t(state.range(0)), 5));
    }
}
BENCHMARK(BM_construct_coupling)->Arg(1000)->Arg(10000);

} // namespace
