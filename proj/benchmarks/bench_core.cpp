#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tracekit/groups/decompositions.hpp"
#include "tracekit/groups/matrix.hpp"
#include "tracekit/groups/random.hpp"
#include "tracekit/testfn/chart_fn.hpp"
#include "tracekit/testfn/fourier.hpp"
#include "tracekit/testfn/separable.hpp"
#include "tracekit/trace/trace.hpp"
#include "tracekit/util/parallel.hpp"

using namespace tracekit;

namespace {

std::vector<AlgebraElement> algebra_sample(Family f, int n) {
    std::mt19937_64 rng(7);
    std::vector<AlgebraElement> out;
    for (int i = 0; i < n; ++i) out.push_back(random_algebra_element(f, rng, 2.0));
    return out;
}

void BM_MatExp(benchmark::State& state) {
    const Family f = state.range(0) == 2 ? Family::SL2R : Family::SL3R;
    const auto xs = algebra_sample(f, 256);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(mat_exp(xs[i++ % xs.size()].m));
}
BENCHMARK(BM_MatExp)->Arg(2)->Arg(3);

void BM_IwasawaKAN(benchmark::State& state) {
    const Family f = state.range(0) == 2 ? Family::SL2R : Family::SL3R;
    std::mt19937_64 rng(11);
    std::vector<GroupElement> gs;
    for (int i = 0; i < 256; ++i) gs.push_back(random_group_element(f, rng, 1.5));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(iwasawa_kan(gs[i++ % gs.size()]));
}
BENCHMARK(BM_IwasawaKAN)->Arg(2)->Arg(3);

void BM_IwasawaSO12(benchmark::State& state) {
    const GroupElement h = so12_rotation(0.4) * so12_u(-1.1) * so12_a(0.8);
    for (auto _ : state) benchmark::DoNotOptimize(iwasawa_so12(h));
}
BENCHMARK(BM_IwasawaSO12);

void BM_RadialTransform(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    double k = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(radial_profile_transform(d, k));
        k = k > 20.0 ? 0.0 : k + 0.37;
    }
}
BENCHMARK(BM_RadialTransform)->Arg(1)->Arg(3);

void BM_RadialTransformFast(benchmark::State& state) {
    double k = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(radial_profile_transform_fast(3, k));
        k = k > 20.0 ? 0.0 : k + 0.37;
    }
}
BENCHMARK(BM_RadialTransformFast);

void BM_TraceSo12Cell(benchmark::State& state) {
    set_thread_count(static_cast<int>(state.range(0)));
    const SeparableTestFn phi{single(BumpND{Eigen::Vector3d(0.5, 0.0, 0.0), 1.0, 1.0}),
                              make_chart_fn(GroupChart::SO12_CONJ, {std::nullopt, ChartFactor{0.0, 1.5, 1.0}})};
    for (auto _ : state) benchmark::DoNotOptimize(trace_r3_so12(1.0, 1.0, phi, QuadratureSpec{}));
}
BENCHMARK(BM_TraceSo12Cell)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
