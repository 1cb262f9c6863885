#include <benchmark/benchmark.h>

#include "scc/berezin.hpp"
#include "scc/currents.hpp"
#include "scc/matcalc.hpp"
#include "scc/surface.hpp"

using namespace scc;

static void bm_cocycle_c(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto g1 = random_symplectic(n, 1, 1.5);
    const auto g2 = random_symplectic(n, 2, 1.5);
    const BlockPair b1 = to_blocks(g1), b2 = to_blocks(g2);
    for (auto _ : state) benchmark::DoNotOptimize(cocycle_c(b1, b2));
}
BENCHMARK(bm_cocycle_c)->Arg(1)->Arg(2)->Arg(4);

static void bm_tr_log_series(benchmark::State& state) {
    const auto g1 = random_symplectic(4, 3, 1.5);
    const auto g2 = random_symplectic(4, 4, 1.5);
    const BlockPair b1 = to_blocks(g1), b2 = to_blocks(g2);
    const CMat z = CMat(b1.phi.inverse() * b1.psi * b2.psi.conjugate() * b2.phi.inverse());
    for (auto _ : state) benchmark::DoNotOptimize(tr_log_series(z, 1e-12));
}
BENCHMARK(bm_tr_log_series);

static void bm_big_cocycle_shears(benchmark::State& state) {
    const SympMap q1 = shear_map(0, 1, SineProfile{0.1, 1, 0.0}, 2);
    const SympMap q2 = shear_map(1, 0, SineProfile{0.1, 1, 0.3}, 2);
    const auto grid = QuadratureGrid::torus_midpoint(2, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(big_cocycle_C(q1, q2, grid));
}
BENCHMARK(bm_big_cocycle_shears)->Arg(32)->Arg(64);

static void bm_gamma_circ_twist(benchmark::State& state) {
    TwistSpec spec;
    spec.base_radius = 0.6;
    spec.eps = 0.1;
    const SympMap q = epsilon_twist(spec, 1.0);
    const auto grid = QuadratureGrid::disk_polar(1.0, static_cast<int>(state.range(0)), 16);
    for (auto _ : state) benchmark::DoNotOptimize(gamma_circ(q, grid));
}
BENCHMARK(bm_gamma_circ_twist)->Arg(512)->Arg(2048);

static void bm_turning_angle(benchmark::State& state) {
    TwistSpec spec;
    spec.base_radius = 0.5;
    spec.eps = 0.12;
    const SympMap q = epsilon_twist(spec, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(turning_angle(q, 0.52, 0.1, 0.0, 1.0));
}
BENCHMARK(bm_turning_angle);

BENCHMARK_MAIN();
