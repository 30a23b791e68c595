#include <benchmark/benchmark.h>

#include "tisgm/chain.hpp"
#include "tisgm/oracle.hpp"
#include "tisgm/solver.hpp"
#include "tisgm/spectral.hpp"

namespace {

using namespace tisgm;

void BM_f_scalar(benchmark::State& state) {
    const ScalarMapContext ctx(make_params(1.6, static_cast<int>(state.range(0))));
    double x = 0.7;
    for (auto _ : state) {
        x = f_scalar(x, ctx);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_f_scalar)->Arg(2)->Arg(5);

void BM_f_derivative(benchmark::State& state) {
    const ScalarMapContext ctx(make_params(1.6, 2));
    for (auto _ : state) {
        double d = f_derivative(1.0, ctx);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_f_derivative);

void BM_find_fixed_points(benchmark::State& state) {
    const ScalarMapContext ctx(make_params(1.6, 2));
    for (auto _ : state) {
        auto fps = find_fixed_points(ctx, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(fps);
    }
}
BENCHMARK(BM_find_fixed_points)->Arg(501)->Arg(2001);

void BM_critical_theta(benchmark::State& state) {
    for (auto _ : state) {
        double tc = critical_theta(static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(tc);
    }
}
BENCHMARK(BM_critical_theta)->Arg(2);

void BM_build_transitions(benchmark::State& state) {
    const ScalarMapContext ctx(make_params(2.0, 2));
    const BoundaryLaw law = disordered_law(ctx);
    for (auto _ : state) {
        auto ts = build_transitions(law, ctx);
        benchmark::DoNotOptimize(ts);
    }
}
BENCHMARK(BM_build_transitions);

void BM_exact_measure(benchmark::State& state) {
    const ScalarMapContext ctx(make_params(1.6, 2));
    const int depth = static_cast<int>(state.range(0));
    const auto fields =
        FieldAssignment::from_law(disordered_law(ctx), 2, depth);
    for (auto _ : state) {
        auto mu = exact_measure(fields, ctx, depth);
        benchmark::DoNotOptimize(mu);
    }
}
BENCHMARK(BM_exact_measure)->Arg(2)->Arg(3);

void BM_sample_tree(benchmark::State& state) {
    const ScalarMapContext ctx(make_params(1.6, 2));
    const BoundaryLaw law = disordered_law(ctx);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto tree = sample(law, ctx, static_cast<int>(state.range(0)), seed++);
        benchmark::DoNotOptimize(tree);
    }
}
BENCHMARK(BM_sample_tree)->Arg(3)->Arg(9);

} // namespace

BENCHMARK_MAIN();
