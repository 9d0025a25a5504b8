#include <benchmark/benchmark.h>

#include "rieszlab/operators.hpp"

using namespace rieszlab;

static void BM_CocancelingCheck(benchmark::State& state) {
    const auto op = opalg::make_builtin(opalg::BuiltinOp::curl, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(opalg::cocanceling_check(op));
}
BENCHMARK(BM_CocancelingCheck)->Arg(2)->Arg(3)->Arg(5);

static void BM_ProjectionSolve(benchmark::State& state) {
    const auto op = opalg::make_builtin(opalg::BuiltinOp::curl, 3);
    for (auto _ : state) benchmark::DoNotOptimize(opalg::try_solve_projection_maps(op));
}
BENCHMARK(BM_ProjectionSolve);

static void BM_CancelingCheck(benchmark::State& state) {
    const auto op = opalg::make_builtin(opalg::BuiltinOp::gradient, 3);
    for (auto _ : state) benchmark::DoNotOptimize(opalg::canceling_check(op, 64));
}
BENCHMARK(BM_CancelingCheck);
