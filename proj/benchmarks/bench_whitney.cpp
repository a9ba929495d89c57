#include <benchmark/benchmark.h>

#include "gagliardo/domain.hpp"
#include "gagliardo/lemmas.hpp"
#include "gagliardo/whitney.hpp"

namespace {

using namespace gagliardo;

void BM_WhitneyBuildSquare(benchmark::State& state) {
    const Domain dom = Domain::box({{0.0, 1.0}, {0.0, 1.0}});
    WhitneyParams params;
    params.max_depth = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(whitney_decompose(dom, params).size());
    }
}
BENCHMARK(BM_WhitneyBuildSquare)->Arg(6)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_LemmaAllOver(benchmark::State& state) {
    const Domain dom = Domain::box({{0.0, 1.0}, {0.0, 1.0}});
    WhitneyParams params;
    params.max_depth = static_cast<int>(state.range(0));
    const WhitneyDecomposition w = whitney_decompose(dom, params);
    const KernelProfile prof = KernelProfile::power(0.5);
    const ExponentPair exps(2.0, 2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lemma_sum_all_over(w, prof, 2.0, exps).sup_constant);
    }
}
BENCHMARK(BM_LemmaAllOver)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

}  // namespace
