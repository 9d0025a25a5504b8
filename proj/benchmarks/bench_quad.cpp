#include <benchmark/benchmark.h>

#include <cmath>

#include "rieszlab/fields.hpp"
#include "rieszlab/quad.hpp"

using namespace rieszlab;

namespace {

quad::FieldSamples bump_samples(int n) {
    const auto f = fields::make_bump(2, {0.0, 0.0}, 1.0, true);
    return quad::sample_field(*f, {2, 2.0, n});
}

}  // namespace

static void BM_PotentialGrid(benchmark::State& state) {
    const auto kernel = quad::make_riesz_kernel(2, 1.0);
    const auto f = bump_samples(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(quad::riesz_potential_grid(f, kernel));
}
BENCHMARK(BM_PotentialGrid)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_WeightedNorm(benchmark::State& state) {
    const auto f = bump_samples(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            quad::weighted_norm(f, -0.5, 4.0 / 3.0, quad::Domain::box()));
}
BENCHMARK(BM_WeightedNorm)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_RieszTransform(benchmark::State& state) {
    const auto f = bump_samples(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(quad::riesz_transform(f, 0));
}
BENCHMARK(BM_RieszTransform)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
