#include <benchmark/benchmark.h>

#include "inls/ensembles.hpp"
#include "inls/evolution.hpp"
#include "inls/fft.hpp"
#include "inls/functionals.hpp"
#include "inls/weights.hpp"

namespace {

using namespace inls;

Field test_field(int dim, int M) {
    auto grid = make_grid(dim, M, 20.0);
    return random_localized(grid, 7, M / 8, 1.0, 4.0);
}

void BM_strang_step(benchmark::State& state) {
    int M = static_cast<int>(state.range(0));
    Field u = test_field(1, M);
    Params params = make_params(1, 0.5);
    Stepper st(u.grid, params);
    for (auto _ : state) {
        st.step(u, 1e-4);
        benchmark::DoNotOptimize(u.values.data());
    }
}
BENCHMARK(BM_strang_step)->Arg(256)->Arg(1024)->Arg(4096);

void BM_strang_step_2d(benchmark::State& state) {
    int M = static_cast<int>(state.range(0));
    Field u = test_field(2, M);
    Params params = make_params(2, 1.0);
    Stepper st(u.grid, params);
    for (auto _ : state) {
        st.step(u, 1e-4);
        benchmark::DoNotOptimize(u.values.data());
    }
}
BENCHMARK(BM_strang_step_2d)->Arg(64)->Arg(256);

void BM_grad_norm(benchmark::State& state) {
    Field u = test_field(1, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(grad_norm_sq(u));
}
BENCHMARK(BM_grad_norm)->Arg(1024)->Arg(4096);

void BM_energy(benchmark::State& state) {
    Field u = test_field(1, static_cast<int>(state.range(0)));
    Params params = make_params(1, 0.5);
    auto w = weighted_potential_nodes(u.grid, params.b);
    for (auto _ : state)
        benchmark::DoNotOptimize(energy(u, params, w).total);
}
BENCHMARK(BM_energy)->Arg(1024)->Arg(4096);

void BM_resample(benchmark::State& state) {
    Field u = test_field(1, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Field v = resample_scaled(u, 0.5);
        benchmark::DoNotOptimize(v.values.data());
    }
}
BENCHMARK(BM_resample)->Arg(256)->Arg(1024);

} // namespace

BENCHMARK_MAIN();
