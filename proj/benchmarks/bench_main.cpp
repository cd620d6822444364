#include <benchmark/benchmark.h>

#include <tqxy/types.hpp>
#include <tqxy/dynamics.hpp>
#include <tqxy/fourier.hpp>
#include <tqxy/gate_search.hpp>
#include <tqxy/presets.hpp>
#include <tqxy/pulse.hpp>
#include <tqxy/trajectory.hpp>

using namespace tqxy;

static void BM_ModulatedSpectrum(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const PulseParams p = make_pulse(k, 0.5 * table_row(k).d_max, 20e-6);
  for (auto _ : state) benchmark::DoNotOptimize(modulated_spectrum(p, 4 * k));
}
BENCHMARK(BM_ModulatedSpectrum)->Arg(3)->Arg(9)->Arg(15);

static void BM_PulseProfile(benchmark::State& state) {
  const auto& g = gate_preset("G1");
  PulseParams p = make_pulse(g.k, g.d, preset_candidate(g).t_pi, state.range(0) ? g.t_ramp : 0.0);
  for (auto _ : state) {
    PulseProfile prof(p);
    benchmark::DoNotOptimize(prof.omega(0.3 * p.t_pi));
  }
}
BENCHMARK(BM_PulseProfile)->Arg(0)->Arg(1);

static void BM_Enumerate(benchmark::State& state) {
  SystemParams sys;
  sys.nu = two_pi * 220e3;
  sys.eta = 0.005;
  EnumerateOptions opt;
  opt.compute_omega_pp = false;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_gates(9, sys, opt));
}
BENCHMARK(BM_Enumerate)->Unit(benchmark::kMillisecond);

static void BM_PhaseSpace(benchmark::State& state) {
  const auto& g = gate_preset("G1");
  const auto plan = preset_plan(g);
  PhaseSpaceOptions opt;
  opt.eta = g.eta;
  opt.nu = g.nu;
  for (auto _ : state) benchmark::DoNotOptimize(plan_phase_space(plan, opt, false));
}
BENCHMARK(BM_PhaseSpace)->Unit(benchmark::kMillisecond);

static void BM_PropagateG4(benchmark::State& state) {
  const auto& g = gate_preset("G4");
  HamiltonianModel m;
  m.n_a = static_cast<int>(state.range(0));
  NumericsConfig num;
  num.steps_per_pulse = 32;
  const GateHamiltonian H(m, preset_plan(g), preset_system(g), NoiseConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(simulate_gate(H, num));
}
BENCHMARK(BM_PropagateG4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
