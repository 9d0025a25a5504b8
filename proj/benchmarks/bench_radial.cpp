#include <benchmark/benchmark.h>

#include <cmath>

#include "rieszlab/fields.hpp"
#include "rieszlab/radial.hpp"

using namespace rieszlab;

static void BM_AngularKernel(benchmark::State& state) {
    const double sep = state.range(0) == 0 ? 0.5 : 1e-4;
    for (auto _ : state)
        benchmark::DoNotOptimize(radial::angular_kernel(2, -1.0, 1.0, 1.0 + sep));
}
BENCHMARK(BM_AngularKernel)->Arg(0)->Arg(1);

static void BM_RadialPotential(benchmark::State& state) {
    const auto kern = quad::make_riesz_kernel(2, 1.0);
    const auto moll = fields::mollifier_family(fields::make_bump(2, {0, 0}, 1.0, true), 0.01);
    auto density = [&](double s) { return moll->value({s, 0.0})[0]; };
    const double r = state.range(0) == 0 ? 1.0 : 0.015;  // separated vs diagonal
    for (auto _ : state) benchmark::DoNotOptimize(radial::potential(kern, density, 0.01, r));
}
BENCHMARK(BM_RadialPotential)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
