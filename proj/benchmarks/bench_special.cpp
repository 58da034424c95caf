#include <benchmark/benchmark.h>

#include <sskg/special.hpp>

namespace {

void BM_regularized_gamma(benchmark::State& state) {
    const double s = double(state.range(0));
    double x = 0.0;
    for (auto _ : state) {
        x += 0.003;
        if (x > 30.0) x = 0.003;
        benchmark::DoNotOptimize(sskg::regularized_lower_gamma(s, x));
    }
}
BENCHMARK(BM_regularized_gamma)->Arg(1)->Arg(3)->Arg(9);

void BM_power_inverse_cdf(benchmark::State& state) {
    const sskg::NakagamiSpec spec(1.5, 2.0);
    double u = 0.0;
    for (auto _ : state) {
        u += 1e-4;
        if (u >= 1.0) u = 1e-4;
        benchmark::DoNotOptimize(sskg::power_inverse_cdf(spec, u));
    }
}
BENCHMARK(BM_power_inverse_cdf);

void BM_order_check_grid(benchmark::State& state) {
    const sskg::NakagamiSpec a(1.0, 3.0), b(1.0, 2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sskg::order_check_grid(a, b, std::size_t(state.range(0))));
    }
}
BENCHMARK(BM_order_check_grid)->Arg(64)->Arg(256);

} // namespace
