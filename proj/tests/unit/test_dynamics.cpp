#include <cmath>

#include "doctest.h"
#include "oracles/derived_values.hpp"
#include <tqxy/types.hpp>
#include <tqxy/dynamics.hpp>
#include <tqxy/presets.hpp>

using namespace tqxy;
using doctest::Approx;

namespace {

double noiseless(const char* id, bool tqxy16, int n_a = 16) {
  const auto& g = gate_preset(id);
  HamiltonianModel m;
  m.n_a = n_a;
  const GateHamiltonian H(m, preset_plan(g, tqxy16), preset_system(g), NoiseConfig{});
  return simulate_gate(H, NumericsConfig{}).infidelity;
}

}  // namespace

TEST_CASE("mode Hamiltonian structure") {
  const auto& g = gate_preset("G4");
  HamiltonianModel m;
  m.n_a = 8;
  m.effective_second_mode = false;
  const auto sys = preset_system(g);
  const GateHamiltonian H(m, preset_plan(g), sys, NoiseConfig{});
  for (int q = 0; q < 4; ++q) {
    const MatrixXc h = H.mode_block(q);
    CHECK((h - h.adjoint()).norm() < 1e-9 * h.norm());
    for (int i = 0; i < 8; ++i) {
      CHECK(std::abs(h(i, i) - cplx(sys.nu * i, 0.0)) < 1e-6);
      if (i + 1 < 8) CHECK(std::abs(h(i, i + 1) - sys.eta * sys.nu * kSz[q] * std::sqrt(i + 1.0)) < 1e-6);
      for (int j = i + 2; j < 8; ++j) CHECK(std::abs(h(i, j)) == 0.0);
    }
  }
  const MatrixXc full = H.dense(1e-6);
  CHECK(full.rows() == 32);
  CHECK((full - full.adjoint()).norm() < 1e-9 * full.norm());
}

TEST_CASE("noise parameters") {
  CHECK(preset_system(gate_preset("G1")).delta_omega_qubits == Approx(two_pi * 2.54e6));
  CHECK(preset_system(gate_preset("G4")).delta_omega_qubits == Approx(two_pi * 20.34e6));
  CHECK(bose_occupation(two_pi * 220e3, 300.0) == Approx(oracle::Nbar_300K).epsilon(1e-9));
  CHECK(bose_occupation(two_pi * 220e3, 300.0) == Approx(2.8e7).epsilon(0.02));

  NoiseConfig n;
  n.T2_star = 500e-6;
  CHECK(n.effective_delta_omega() == Approx(std::sqrt(2.0) / 500e-6));
  n.t2_convention = T2Convention::Hertz;
  CHECK(n.effective_delta_omega() == Approx(two_pi * std::sqrt(2.0) / 500e-6));
  n.heating_rate = 100.0;
  CHECK(n.gamma(two_pi * 220e3) == Approx(100.0 / oracle::Nbar_300K).epsilon(1e-9));
  n.N_bar = 1e7;
  CHECK(n.gamma(two_pi * 220e3) == Approx(1e-5));
}

TEST_CASE("Bell fidelity") {
  const Vector4c phi = bell_target_vector(BellTarget::PhiPlusTilde);
  CHECK(phi.norm() == Approx(1.0));
  CHECK(bell_fidelity(Matrix4c(phi * phi.adjoint()), BellTarget::PhiPlusTilde) == Approx(1.0));
  CHECK(bell_fidelity(Matrix4c(Matrix4c::Identity() / 4.0), BellTarget::PhiPlus) == Approx(0.5));

  const auto rho = thermal_density(initial_qubits(BellTarget::PhiPlusTilde), 16, 1.0);
  CHECK(std::abs(rho.rho.trace() - 1.0) < 1e-12);
  const auto psi = thermal_product_state(initial_qubits(BellTarget::PhiPlusTilde), {16}, 1.0);
  CHECK((psi.reduced_qubits() - rho.reduced_qubits()).norm() < 1e-12);
}

TEST_CASE("G4 noiseless gate") {
  const auto& g = gate_preset("G4");
  const GateHamiltonian H(HamiltonianModel{}, preset_plan(g), preset_system(g), NoiseConfig{});
  NumericsConfig num;
  num.audit = true;
  const auto r = simulate_gate(H, num);
  CHECK(r.infidelity == Approx(1.2e-5).epsilon(1e-5 / 1.2e-5));
  CHECK(r.audit_passed);
  REQUIRE(r.audit_delta);
  CHECK(*r.audit_delta < 1e-7);
  CHECK(r.norm_error < 1e-8);
}

TEST_CASE("Fock truncation") {
  const double a = noiseless("G4", true, 16);
  const double b = noiseless("G4", true, 20);
  CHECK(std::abs(a - b) < 0.1 * a);
}

TEST_CASE("TQXY16 refocuses better than XY8") {
  for (const char* id : {"G1", "G2", "G3", "G4"}) {
    CAPTURE(id);
    CHECK(noiseless(id, true) < noiseless(id, false));
  }
}

TEST_CASE("a coarse step fails the audit") {
  const auto& g = gate_preset("G4");
  const GateHamiltonian H(HamiltonianModel{}, preset_plan(g), preset_system(g), NoiseConfig{});
  NumericsConfig num;
  num.audit = true;
  num.steps_per_pulse = 3;
  bool failed = false;
  try {
    failed = !simulate_gate(H, num).audit_passed;
  } catch (const NumericalError&) {
    failed = true;
  }
  CHECK(failed);
}

TEST_CASE("heating needs the single-mode model") {
  const auto& g = gate_preset("G4");
  HamiltonianModel m;
  m.variant = ModelVariant::Hf;
  m.n_a = 4;
  m.n_b = 3;
  NoiseConfig n;
  n.heating_rate = 100;
  const GateHamiltonian H(m, preset_plan(g), preset_system(g), n);
  CHECK_THROWS_AS(propagate_lindblad(H, thermal_density(initial_qubits(BellTarget::PhiPlusTilde), 4, 1.0),
                                     NumericsConfig{}),
                  InvalidArgument);
}
