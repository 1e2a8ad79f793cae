#include <benchmark/benchmark.h>

#include "cadlag/metrics.hpp"
#include "cadlag/moduli.hpp"
#include "cadlag/random.hpp"
#include "cadlag/stieltjes.hpp"

#include <random>
#include <vector>

namespace {

using namespace cadlag;

StepPath random_staircase(long jumps, std::uint64_t seed) {
    auto rng = make_rng(seed, 0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::pair<double, Vec>> knots;
    std::vector<double> times;
    times.reserve(jumps);
    for (long i = 0; i < jumps; ++i) times.push_back(unif(rng));
    std::sort(times.begin(), times.end());
    double level = unif(rng);
    for (double t : times) {
        level += unif(rng) - 0.5;
        knots.emplace_back(t, Vec{level});
    }
    return StepPath(1, 1.0, Vec{0.0}, knots);
}

void BM_j1_distance(benchmark::State& state) {
    const long jumps = state.range(0);
    const StepPath x = random_staircase(jumps, 11);
    const StepPath y = random_staircase(jumps, 12);
    for (auto _ : state) benchmark::DoNotOptimize(j1_distance(x, y));
}
BENCHMARK(BM_j1_distance)->Arg(8)->Arg(16)->Arg(32);

void BM_m1_distance(benchmark::State& state) {
    const long jumps = state.range(0);
    const StepPath x = random_staircase(jumps, 21);
    const StepPath y = random_staircase(jumps, 22);
    MetricConfig cfg;
    cfg.eps_dp = 5e-3;
    for (auto _ : state) benchmark::DoNotOptimize(m1_distance(x, y, cfg));
}
BENCHMARK(BM_m1_distance)->Arg(8)->Arg(16);

void BM_m1_modulus(benchmark::State& state) {
    const long jumps = state.range(0);
    const StepPath x = random_staircase(jumps, 31);
    for (auto _ : state) benchmark::DoNotOptimize(m1_modulus(x, 0.1));
}
BENCHMARK(BM_m1_modulus)->Arg(16)->Arg(64)->Arg(256);

void BM_ito_integral(benchmark::State& state) {
    const long jumps = state.range(0);
    const StepPath h = random_staircase(jumps, 41);
    const StepPath x = random_staircase(jumps, 42);
    for (auto _ : state) benchmark::DoNotOptimize(ito_integral(h, x));
}
BENCHMARK(BM_ito_integral)->Arg(64)->Arg(512)->Arg(4096);

} // namespace

BENCHMARK_MAIN();
