#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "liddi/dressing.hpp"
#include "liddi/liouvillian.hpp"
#include "liddi/observables.hpp"
#include "liddi/orientation.hpp"
#include "liddi/spectra.hpp"

using namespace liddi;

namespace {

const double kPi = std::acos(-1.0);

DressedFrame frame() { return dressed_frame(100.0, 1.0, 2.0, Vec3(0, 0, 100)); }

ReservoirSpectrum lorentzian() { return ReservoirSpectrum(Lorentzian{1e-3, 1e-3, 1e-3, 98.0, 1.0}); }

ReservoirSpectrum tabulated() {
  std::vector<double> w, g;
  std::vector<cplx> g12;
  for (int i = 0; i <= 800; ++i) {
    w.push_back(80 + 0.05 * i);
    const double d = w.back() - 98.85;
    g.push_back(0.1 / (kPi * (d * d + 0.01)));
    g12.emplace_back(g.back());
  }
  return ReservoirSpectrum(Tabulated(w, g, g, g12));
}

CouplingTable table() { return flat_table(frame(), 0.01, 0.005, 0.002); }

}  // namespace

static void BM_LorentzianShift(benchmark::State& st) {
  const auto s = lorentzian();
  for (auto _ : st) benchmark::DoNotOptimize(delta_at(s, 0, 1, 97.8));
}
BENCHMARK(BM_LorentzianShift);

static void BM_TabulatedShift(benchmark::State& st) {
  const auto s = tabulated();
  for (auto _ : st) benchmark::DoNotOptimize(delta_at(s, 0, 1, 97.8));
}
BENCHMARK(BM_TabulatedShift);

static void BM_CavityModeSum(benchmark::State& st) {
  IdealCavity c;
  for (auto _ : st) benchmark::DoNotOptimize(cavity_rddi(c, 0.21, 0.64, 10.3 * kPi));
}
BENCHMARK(BM_CavityModeSum);

static void BM_CouplingTable(benchmark::State& st) {
  const auto s = lorentzian();
  const auto f = frame();
  const SitePair at{Vec3::Zero(), Vec3(0, 0, 0.01)};
  for (auto _ : st) benchmark::DoNotOptimize(coupling_table(s, f, at));
}
BENCHMARK(BM_CouplingTable);

static void BM_SteadyState(benchmark::State& st) {
  const auto f = frame();
  const auto t = table();
  for (auto _ : st) benchmark::DoNotOptimize(steady_state(build_liouvillian(t, f, Vec3(0, 0, 0.01))));
}
BENCHMARK(BM_SteadyState);

static void BM_Evolve(benchmark::State& st) {
  const auto f = frame();
  const auto g = build_liouvillian(table(), f, Vec3(0, 0, 0.01));
  const auto rho0 = ground_pair_state(f, f);
  const double dt = 0.5 * EvolveOptions{}.step_factor / g.norm();
  for (auto _ : st) benchmark::DoNotOptimize(evolve(g, rho0, 5.0, dt, {100}));
}
BENCHMARK(BM_Evolve)->Unit(benchmark::kMillisecond);

static void BM_IsotropicAverage(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(isotropic_average_oracle(1.0, Vec3(0, 0, 1), Vec3(1, 0, 0), st.range(0), 7));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_IsotropicAverage)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
