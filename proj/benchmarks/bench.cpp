#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "smmdtc/smmdtc.hpp"

namespace {

smmdtc::ModelSpec chain(int n) {
  smmdtc::ModelSpec m;
  m.n_sites = n;
  return m;
}

void BM_RotatingFrameHamiltonian(benchmark::State& state) {
  const auto spec = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(smmdtc::build_rotating_frame(spec));
}
BENCHMARK(BM_RotatingFrameHamiltonian)->DenseRange(2, 6);

void BM_SpectralSeries(benchmark::State& state) {
  const auto spec = chain(static_cast<int>(state.range(0)));
  const smmdtc::LabFrameHamiltonian lab(spec);
  const auto rho0 = smmdtc::thermal_state(lab.at(0.0), smmdtc::default_beta(spec));
  const auto prop = smmdtc::spectral_evolve(rho0, smmdtc::build_rotating_frame(spec));
  const auto ops = smmdtc::chain_spin_operators(spec.spin, spec.n_sites);
  smmdtc::EvolutionConfig cfg;
  cfg.periods = 100;
  const auto times = smmdtc::sample_times(cfg, spec.period());
  for (auto _ : state) benchmark::DoNotOptimize(prop.expectation_series(ops.sz, times));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(times.size()));
}
BENCHMARK(BM_SpectralSeries)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_StepOnePeriod(benchmark::State& state) {
  const auto spec = chain(static_cast<int>(state.range(0)));
  const smmdtc::LabFrameHamiltonian lab(spec);
  const auto rho0 = smmdtc::thermal_state(lab.at(0.0), smmdtc::default_beta(spec));
  smmdtc::EvolutionConfig cfg;
  cfg.backend = smmdtc::Backend::stepping;
  cfg.periods = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(smmdtc::step_evolve(rho0, lab, cfg, spec.period(), [](std::size_t, double, const smmdtc::CMatrix&) {}));
  }
}
BENCHMARK(BM_StepOnePeriod)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_Dft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::cos(0.49 * 2.0 * smmdtc::kPi * static_cast<double>(i) / 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(smmdtc::dft(x, 0.05, smmdtc::Window::hann));
}
BENCHMARK(BM_Dft)->Arg(1 << 14)->Arg(20000)->Arg(200000);

}  // namespace

BENCHMARK_MAIN();
