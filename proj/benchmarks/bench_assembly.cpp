#include <wittenlab/discretize.hpp>
#include <wittenlab/ssf.hpp>

#include <benchmark/benchmark.h>

using namespace wittenlab;

namespace {

const PotentialProfile& profile() {
    static const PotentialProfile p = builtin_profile(ProfileKind::gaussian, 1.0, 1.0);
    return p;
}

void BM_AssembleMollified(benchmark::State& state) {
    const QuadratureGrid grid = build_grid(profile(), static_cast<std::size_t>(state.range(0)), 1e-12);
    const SpectralPoint point = SpectralPoint::boundary(1.0, Side::upper);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_bs_mollified(profile(), 8, grid, point));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AssembleMollified)->RangeMultiplier(2)->Range(100, 800)->Complexity(benchmark::oNSquared);

void BM_FourierTrace(benchmark::State& state) {
    const auto modes = static_cast<std::size_t>(state.range(0));
    const double radius = profile().tail_radius(1e-12);
    for (auto _ : state) {
        const FourierOperatorPair pair = fourier_pair(profile(), 4, 2.0 * radius, modes, radius);
        benchmark::DoNotOptimize(trace_gz_diff(pair, -1.0));
    }
}
BENCHMARK(BM_FourierTrace)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_SsfMollifiedCurve(benchmark::State& state) {
    const std::vector<double> grid = uniform_grid(-4.0, 4.0, 0.1);
    NystromParams params;
    params.nodes = 200;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssf_mollified(profile(), 8, grid, params));
    }
}
BENCHMARK(BM_SsfMollifiedCurve)->Unit(benchmark::kMillisecond);

}  // namespace
