#include <benchmark/benchmark.h>

#include "cavnet/experiments.hpp"
#include "cavnet/liouville.hpp"
#include "cavnet/optics.hpp"
#include "cavnet/oracle.hpp"

using namespace cavnet;

static void BM_DeriveRates(benchmark::State& state) {
  const optics::NetworkSpec net = optics::NetworkSpec::reference_geometry();
  for (auto _ : state) benchmark::DoNotOptimize(optics::derive_rates(net, 1.0, false));
}
BENCHMARK(BM_DeriveRates);

static void BM_Apply(benchmark::State& state) {
  const Basis b = build_basis(4, true, state.range(0) != 0);
  const Liouvillian L = build_liouvillian(optics::paper_preset_rates(1.0).without_detector(), b);
  const Matrix rho = initial_state(b, b.has_ancilla() ? InitialState::epr_with_ancilla(1)
                                                      : InitialState::single_photon_site(1))
                         .data();
  for (auto _ : state) benchmark::DoNotOptimize(L.apply(rho));
}
BENCHMARK(BM_Apply)->Arg(0)->Arg(1);

static void BM_Superoperator(benchmark::State& state) {
  const Basis b = build_basis(4, true, false);
  const Liouvillian L = build_liouvillian(optics::paper_preset_rates(1.0), b);
  for (auto _ : state) benchmark::DoNotOptimize(L.superoperator());
}
BENCHMARK(BM_Superoperator);

static void BM_EvolvePreset(benchmark::State& state) {
  const Basis b = build_basis(4, true, false);
  const Liouvillian L = build_liouvillian(optics::paper_preset_rates(1.0), b);
  const DensityMatrix rho0 = initial_state(b, InitialState::single_photon_site(1));
  const double t_end = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evolve(rho0, L, t_end, 5e-4, {100, true}));
}
BENCHMARK(BM_EvolvePreset)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_EvolveExactPreset(benchmark::State& state) {
  const Basis b = build_basis(4, true, false);
  const Liouvillian L = build_liouvillian(optics::paper_preset_rates(1.0), b);
  const DensityMatrix rho0 = initial_state(b, InitialState::single_photon_site(1));
  for (auto _ : state) benchmark::DoNotOptimize(evolve_exact(rho0, L, 1.0, 5e-4, {100, true}));
}
BENCHMARK(BM_EvolveExactPreset)->Unit(benchmark::kMillisecond);

static void BM_OraclePropagate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RateSet r;
  r.n_sites = n;
  for (int k = 1; k < n; ++k) r.set_coupling(k, k + 1, 1.0);
  r.dissipation.assign(static_cast<std::size_t>(n), 0.07);
  r.dephasing.assign(static_cast<std::size_t>(n), 1.0);
  r.detector_rate = 1.0;
  const Basis b = build_basis(n, true, false);
  const oracle::FockBasis f(n, true);
  const Matrix rho0 = oracle::embed(initial_state(b, InitialState::single_photon_site(1)), f);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::fock_propagate(r, f, rho0, 0.1, 1e-3));
}
BENCHMARK(BM_OraclePropagate)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_DisorderEnsemble(benchmark::State& state) {
  DisorderConfig cfg;
  cfg.n_samples = static_cast<std::size_t>(state.range(0));
  const RateSet rates = optics::paper_preset_rates(0.0);
  for (auto _ : state) benchmark::DoNotOptimize(disorder_ensemble(rates, cfg, 1.0, {2.0, 5e-4, 10}));
}
BENCHMARK(BM_DisorderEnsemble)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
