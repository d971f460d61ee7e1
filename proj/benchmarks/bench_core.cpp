#include <benchmark/benchmark.h>

#include "kpp/bounds.hpp"
#include "kpp/oscillation.hpp"
#include "kpp/spectral.hpp"
#include "kpp/wave_profiles.hpp"

namespace {

void BM_AMinus(benchmark::State& state) {
    const kpp::ModelParams p(2.0, 1.5);
    double x = -0.5;
    for (auto _ : state) benchmark::DoNotOptimize(kpp::bounds::eval_A_minus(x, p));
}
BENCHMARK(BM_AMinus);

void BM_F(benchmark::State& state) {
    const kpp::ModelParams p(2.0, 1.5);
    double x = 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(kpp::bounds::eval_F(x, p));
}
BENCHMARK(BM_F);

void BM_ProfileBvp(benchmark::State& state) {
    const kpp::ModelParams p(2.0, static_cast<double>(state.range(0)) / 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(kpp::wave::solve_profile_bvp(p));
}
BENCHMARK(BM_ProfileBvp)->Arg(0)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_Certify(benchmark::State& state) {
    const auto sol = kpp::wave::solve_profile_bvp(kpp::ModelParams(2.0, 1.5));
    for (auto _ : state) benchmark::DoNotOptimize(kpp::osc::certify_profile(sol));
}
BENCHMARK(BM_Certify)->Unit(benchmark::kMillisecond);

void BM_RootCount(benchmark::State& state) {
    const kpp::ModelParams p(static_cast<double>(state.range(0)), 1.5);
    kpp::spectral::CountOptions opts;
    opts.locate_roots = false;
    for (auto _ : state) benchmark::DoNotOptimize(kpp::spectral::count_rhp_roots(p, opts));
}
BENCHMARK(BM_RootCount)->Arg(2)->Arg(10)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
