#include <wittenlab/det2lab.hpp>
#include <wittenlab/discretize.hpp>

#include <benchmark/benchmark.h>

using namespace wittenlab;

namespace {

void BM_Det2Lu(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const ComplexMatrix t = ComplexMatrix::Random(n, n) * (0.5 / static_cast<double>(n));
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_det2(t));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Det2Lu)->RangeMultiplier(2)->Range(100, 800)->Complexity(benchmark::oNCubed);

void BM_Det2EigenvalueProduct(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const ComplexMatrix t = ComplexMatrix::Random(n, n) * (0.5 / static_cast<double>(n));
    for (auto _ : state) {
        benchmark::DoNotOptimize(det2_eigenvalue_product(t));
    }
}
BENCHMARK(BM_Det2EigenvalueProduct)->Arg(100)->Arg(200);

}  // namespace
