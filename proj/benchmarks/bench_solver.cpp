#include <benchmark/benchmark.h>

#include "ustokes/linsolve.hpp"
#include "ustokes/manufactured.hpp"
#include "ustokes/timestepping.hpp"

namespace {

using namespace ustokes;

struct Problem {
    TaylorHoodSpace space;
    SpatialQuadrature quad;
    StokesOperators ops;
    Eigen::VectorXd load;

    explicit Problem(int n)
        : space(make_taylor_hood_space(build_unit_square(n))),
          quad(gauss_rule_2d(5)),
          ops(assemble_operators(space, quad)) {
        const ManufacturedSolution ms;
        load = assemble_load(space, quad,
                             [&](std::array<double, 2> x) { return ms.forcing(x, 1.0); });
    }
};

void BM_AssembleOperators(benchmark::State& state) {
    const auto space = make_taylor_hood_space(build_unit_square(static_cast<int>(state.range(0))));
    const auto quad = gauss_rule_2d(5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_operators(space, quad));
    }
}
BENCHMARK(BM_AssembleOperators)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_AssembleLoad(benchmark::State& state) {
    const Problem prob(static_cast<int>(state.range(0)));
    const ManufacturedSolution ms;
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_load(
            prob.space, prob.quad,
            [&](std::array<double, 2> x) { return ms.forcing(x, 0.5); }));
    }
}
BENCHMARK(BM_AssembleLoad)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

/// Factorization + one solve (fresh cache each iteration).
void BM_SaddleFactorize(benchmark::State& state) {
    const Problem prob(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const SaddleSolver solver(prob.ops, 1e-10);
        benchmark::DoNotOptimize(solver.solve(1.0, 0.25, prob.load, 0.25));
    }
}
BENCHMARK(BM_SaddleFactorize)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

/// Back-substitution only (factorization cached across iterations).
void BM_SaddleSolveCached(benchmark::State& state) {
    const Problem prob(static_cast<int>(state.range(0)));
    const SaddleSolver solver(prob.ops, 1e-10);
    benchmark::DoNotOptimize(solver.solve(1.0, 0.25, prob.load, 0.25));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solver.solve(1.0, 0.25, prob.load, 0.25));
    }
}
BENCHMARK(BM_SaddleSolveCached)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

/// One full interval of the time march (loads + solve, cached factorization).
void BM_TimeStep(benchmark::State& state) {
    const Problem prob(static_cast<int>(state.range(0)));
    const SaddleSolver solver(prob.ops, 1e-10);
    const ManufacturedSolution ms;
    const TimeDependentField f = ms.forcing_field();
    const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(prob.ops.n_u);
    benchmark::DoNotOptimize(
        step(u0, 0.0, 0.5, f, prob.space, prob.quad, prob.ops, solver));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            step(u0, 0.0, 0.5, f, prob.space, prob.quad, prob.ops, solver));
    }
}
BENCHMARK(BM_TimeStep)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
