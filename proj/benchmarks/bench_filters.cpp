#include <benchmark/benchmark.h>

#include <cmath>

#include "photonfilter/filter_generic.hpp"
#include "photonfilter/filter_moments.hpp"
#include "photonfilter/master_ensemble.hpp"
#include "photonfilter/sde_engine.hpp"

using namespace photonfilter;

namespace {

constexpr double kDt = 1e-3;
const double kXi = std::sqrt(0.1);

void BM_MomentHomodyneStep(benchmark::State& state) {
  const CavityRates c{0.1, 0.0};
  const MomentState s = init_moments();
  NoiseStream noise(1);
  for (auto _ : state) benchmark::DoNotOptimize(homodyne_moment_step(s, c, kXi, kDt, wiener_increment(noise, kDt)));
}
BENCHMARK(BM_MomentHomodyneStep);

void BM_GenericHomodyneStep(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const SLHModel m = SLHModel::cavity(dim, 0.1, 0.0);
  const GenericFilterState s = init_filter(FockKet::basis(dim, 0));
  NoiseStream noise(1);
  for (auto _ : state) benchmark::DoNotOptimize(homodyne_step(s, m, kXi, kDt, wiener_increment(noise, kDt)));
}
BENCHMARK(BM_GenericHomodyneStep)->Arg(2)->Arg(4)->Arg(8);

void BM_MomentPhotocountStep(benchmark::State& state) {
  const CavityRates c{0.1, 0.0};
  const MomentState s = init_moments();
  const StepPulse pulse = StepPulse::constant(kXi);
  for (auto _ : state) benchmark::DoNotOptimize(photocount_moment_step(s, c, pulse, kDt, false));
}
BENCHMARK(BM_MomentPhotocountStep);

void BM_GenericPhotocountStep(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const SLHModel m = SLHModel::cavity(dim, 0.1, 0.0);
  const GenericFilterState s = init_filter(FockKet::basis(dim, 0));
  const StepPulse pulse = StepPulse::constant(kXi);
  for (auto _ : state) benchmark::DoNotOptimize(photocount_step(s, m, pulse, kDt, false));
}
BENCHMARK(BM_GenericPhotocountStep)->Arg(2)->Arg(4);

void BM_Trajectory(benchmark::State& state) {
  const auto detector = static_cast<Detector>(state.range(0));
  const SimConfig cfg;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_trajectory(cfg, detector, Engine::moments, ++seed));
}
BENCHMARK(BM_Trajectory)
    ->Arg(static_cast<int>(Detector::homodyne))
    ->Arg(static_cast<int>(Detector::photocount))
    ->Unit(benchmark::kMillisecond);

void BM_MasterEquation(benchmark::State& state) {
  const SimConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(integrate_master(cfg));
}
BENCHMARK(BM_MasterEquation)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
