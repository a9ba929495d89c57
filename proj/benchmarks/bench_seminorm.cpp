#include <benchmark/benchmark.h>

#include "gagliardo/domain.hpp"
#include "gagliardo/kernel.hpp"
#include "gagliardo/seminorm.hpp"
#include "gagliardo/test_function.hpp"

namespace {

using namespace gagliardo;

void BM_FullSeminorm1D(benchmark::State& state) {
    const Domain dom = Domain::interval(0.0, 1.0);
    const Kernel kern = Kernel::product(1, 2.0, KernelProfile::power(0.5));
    const ExponentPair exps(2.0, 2.0);
    const TestFunction f = TestFunction::coordinate(0);
    QuadratureConfig cfg;
    cfg.error_pass = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(full_seminorm(f, dom, kern, exps, cfg).value);
    }
}
BENCHMARK(BM_FullSeminorm1D)->Unit(benchmark::kMillisecond);

void BM_PairSquare(benchmark::State& state) {
    const Domain dom = Domain::box({{0.0, 1.0}, {0.0, 1.0}});
    const Kernel kern = Kernel::product(2, 2.0, KernelProfile::power(0.5));
    const ExponentPair exps(2.0, 2.0);
    const TestFunction f = TestFunction::coordinate(0);
    QuadratureConfig cfg;
    cfg.error_pass = false;
    cfg.boundary_layers = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            seminorm_pair(f, dom, kern, exps, {0.25, 1.0}, cfg).full.value);
    }
}
BENCHMARK(BM_PairSquare)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_StripRatio(benchmark::State& state) {
    const Domain dom = Domain::strip(1, 1);
    const Kernel kern = Kernel::product(2, 2.0, KernelProfile::power(0.75));
    const ExponentPair exps(2.0, 2.0);
    QuadratureConfig cfg;
    cfg.error_pass = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            seminorm_pair(TestFunction::strip_ramp(8.0), dom, kern, exps, {0.5}, cfg)
                .full.value_squared);
    }
}
BENCHMARK(BM_StripRatio)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
