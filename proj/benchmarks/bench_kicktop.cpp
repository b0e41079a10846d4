#include <random>

#include <benchmark/benchmark.h>

#include "kicktop/entangle.hpp"
#include "kicktop/evolve.hpp"
#include "kicktop/husimi.hpp"
#include "kicktop/spincore.hpp"

using namespace kicktop;

namespace {

PureState chaotic_state(SpinQuantum s) {
    const CoupledPropagator prop({{s, 6.0}, {s, 6.0}, 1e-2});
    PureState psi = initial_product_state(s, 0.89, 0.63, 0.89, 0.63);
    for (int n = 0; n < 200; ++n) prop.step(psi);
    return psi;
}

void BM_CoupledStep(benchmark::State& st) {
    const SpinQuantum s(static_cast<int>(st.range(0)));
    const CoupledPropagator prop({{s, 6.0}, {s, 6.0}, 1e-2});
    PureState psi = initial_product_state(s, 0.89, 0.63, 0.89, 0.63);
    for (auto _ : st) {
        prop.step(psi);
        benchmark::DoNotOptimize(psi.amplitudes.data());
    }
}
BENCHMARK(BM_CoupledStep)->Arg(40)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_Schmidt(benchmark::State& st) {
    const auto rdm = reduce(chaotic_state(SpinQuantum(static_cast<int>(st.range(0)))), 1);
    for (auto _ : st) benchmark::DoNotOptimize(schmidt(rdm).eigenvalues.data());
}
BENCHMARK(BM_Schmidt)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_M2Rdm(benchmark::State& st) {
    const SpinQuantum s(static_cast<int>(st.range(0)));
    const auto rdm = reduce(chaotic_state(s), 1);
    const FWeightTable table(s);
    for (auto _ : st) benchmark::DoNotOptimize(m2_rdm(rdm, table));
}
BENCHMARK(BM_M2Rdm)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_WignerHalfPi(benchmark::State& st) {
    const SpinQuantum s(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(wigner_d_half_pi(s).entries.data());
}
BENCHMARK(BM_WignerHalfPi)->Arg(160)->Arg(400)->Unit(benchmark::kMicrosecond);

void BM_HusimiField(benchmark::State& st) {
    const SpinQuantum s(160);
    const auto rdm = reduce(chaotic_state(s), 1);
    const SphericalGrid grid(s, 200, 400);
    for (auto _ : st) benchmark::DoNotOptimize(husimi_field(rdm, grid).values.data());
}
BENCHMARK(BM_HusimiField)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
