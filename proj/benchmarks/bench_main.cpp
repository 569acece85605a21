#include <benchmark/benchmark.h>

#include "tracks/experiments.hpp"

using namespace tracks;

namespace {

Model desk(double k)
{
    const Kinematics kin(10.0, k);
    return Model::build(kin, Source::spherical(kin), {1});
}

void BM_PotentialValue(benchmark::State& state)
{
    const RadialPotential v = transition_potential(eigenstate(1), eigenstate(2));
    double r = 0.1;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(v.value(r));
        r = r > 30.0 ? 0.1 : r + 0.37;
    }
}
BENCHMARK(BM_PotentialValue);

void BM_PotentialFourier(benchmark::State& state)
{
    const RadialPotential v = transition_potential(eigenstate(1), eigenstate(2));
    double q = 0.01;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(v.fourier(q));
        q = q > 50.0 ? 0.01 : q + 0.73;
    }
}
BENCHMARK(BM_PotentialFourier);

void BM_FactorizedFarAmplitude(benchmark::State& state)
{
    const Model m = desk(10.0);
    const Scatterer s = scatterer_for(Geometry({0, 0, 50}, {0, 0, 100}), m, Atom::first, 1);
    const Vec3 u = normalized(Vec3{0.02, 0.01, 1.0});
    for (auto _ : state)
        benchmark::DoNotOptimize(far_amplitude(s, m, u, Strategy::factorized));
}
BENCHMARK(BM_FactorizedFarAmplitude);

void BM_DirectFarAmplitude(benchmark::State& state)
{
    const Model m = desk(static_cast<double>(state.range(0)));
    const Scatterer s = scatterer_for(Geometry({0, 0, 50}, {0, 0, 100}), m, Atom::first, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(far_amplitude(s, m, s.incidence, Strategy::direct));
}
BENCHMARK(BM_DirectFarAmplitude)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_FactorizedDoubleExcitation(benchmark::State& state)
{
    const Model m = desk(10.0);
    const Geometry g = collinearity_geometry(ExperimentConfig{}, 5.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(double_excitation_probability(1, 1, g, m, Strategy::factorized));
}
BENCHMARK(BM_FactorizedDoubleExcitation)->Unit(benchmark::kMillisecond);

void BM_CollinearityScan(benchmark::State& state)
{
    ExperimentConfig cfg;
    cfg.threads = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_collinearity_scan(cfg));
}
BENCHMARK(BM_CollinearityScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
