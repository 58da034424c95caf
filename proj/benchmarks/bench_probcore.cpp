#include <benchmark/benchmark.h>

#include <sskg/bounds.hpp>
#include <sskg/probcore.hpp>
#include <sskg/rng.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace {

sskg::JointDist3 random_triple(std::size_t k, std::uint64_t seed) {
    sskg::Rng rng(seed);
    std::vector<double> p(k * k * k);
    double total = 0.0;
    for (auto& v : p) {
        v = -std::log(1.0 - rng.uniform01());
        total += v;
    }
    for (auto& v : p) v /= total;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i) labels.push_back(std::to_string(i));
    return sskg::JointDist3(labels, labels, labels, p);
}

void BM_mutual_information(benchmark::State& state) {
    const auto j = random_triple(std::size_t(state.range(0)), 7);
    const auto xy = sskg::marginal_xy(j);
    for (auto _ : state) benchmark::DoNotOptimize(sskg::mutual_information(xy));
}
BENCHMARK(BM_mutual_information)->Arg(2)->Arg(4)->Arg(8);

void BM_conditional_mi(benchmark::State& state) {
    const auto j = random_triple(std::size_t(state.range(0)), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sskg::conditional_mutual_information(j, sskg::Conditioning::OnZ));
    }
}
BENCHMARK(BM_conditional_mi)->Arg(2)->Arg(4)->Arg(8);

void BM_sk_bounds(benchmark::State& state) {
    const auto j = random_triple(std::size_t(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(sskg::sk_bounds(j));
}
BENCHMARK(BM_sk_bounds)->Arg(2)->Arg(4)->Arg(8);

void BM_iid_extend(benchmark::State& state) {
    const auto p = sskg::FiniteDist({"0", "1", "2"}, {0.5, 0.3, 0.2});
    for (auto _ : state) {
        benchmark::DoNotOptimize(sskg::iid_extend(p, std::size_t(state.range(0))));
    }
}
BENCHMARK(BM_iid_extend)->Arg(4)->Arg(8)->Arg(12);

} // namespace
