#include <benchmark/benchmark.h>

#include "wavekit/continuation.hpp"
#include "wavekit/curve_jet.hpp"
#include "wavekit/pairings.hpp"
#include "wavekit/presets.hpp"
#include "wavekit/two_squares.hpp"

using namespace wavekit;

static void BM_kernel_set(benchmark::State& state)
{
    const TrivialParameters p = find_preset("ek3")->params;
    for (auto _ : state)
        benchmark::DoNotOptimize(kernel_set(p));
}
BENCHMARK(BM_kernel_set);

static void BM_determinant(benchmark::State& state)
{
    const TrivialFlow fl = make_trivial_flow(find_preset("ek3")->params);
    for (auto _ : state)
        benchmark::DoNotOptimize(determinant_C(fl, 2, 3));
}
BENCHMARK(BM_determinant);

static void BM_two_square_enumeration(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(two_square_representations(99999 + 2 * state.range(0)));
}
BENCHMARK(BM_two_square_enumeration)->Arg(0);

static void BM_mode_inner_product(benchmark::State& state)
{
    const TrivialFlow fl = make_trivial_flow(find_preset("ek1")->params);
    const KernelSet ks = kernel_set(fl.params);
    const WavePair w = mode_pair(fl, ks.mode(1, fl.params.kappa));
    const YElement y = w.as_y();
    for (auto _ : state)
        benchmark::DoNotOptimize(ip_Y(y, y, fl.params.kappa));
}
BENCHMARK(BM_mode_inner_product);

static void BM_curve_jet(benchmark::State& state)
{
    const TrivialFlow fl = make_trivial_flow(find_preset("ek1")->params);
    for (auto _ : state)
        benchmark::DoNotOptimize(curve_jet(fl, 1, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_curve_jet)->Arg(32)->Arg(48);

static void BM_newton_correction(benchmark::State& state)
{
    const TrivialParameters base = find_preset("ek1")->params;
    const Discretization disc = make_discretization(8, 24, base.kappa);
    const WaveSystem sys = make_wave_system(disc, base, {1}, ParameterMask{});
    const DiscreteWaveState pred = predictor_state(sys, {0.01});
    for (auto _ : state)
        benchmark::DoNotOptimize(newton_correct(sys, pred));
}
BENCHMARK(BM_newton_correction);

BENCHMARK_MAIN();
