#include "tqxy/presets.hpp"

#include <map>
#include <mutex>

namespace tqxy {

namespace {

std::vector<GatePreset> make_presets() {
  const double nu = two_pi * 220e3;
  std::vector<GatePreset> v;

  GatePreset g1;
  g1.id = "G1";
  g1.k = 9;
  g1.N = 5;
  g1.d = 1.91464;
  g1.eta = 0.005;
  g1.nu = nu;
  g1.t_ramp = 149e-9;
  g1.heating_rate = 35.0;
  g1.delta_omega_qubits = two_pi * 2.54e6;
  g1.t_g_ref = 1.641e-3;
  g1.omega_pp_ref = two_pi * 124.5e3;
  v.push_back(g1);

  GatePreset g2 = g1;
  g2.id = "G2";
  g2.N = 10;
  g2.d = 0.93339;
  g2.t_ramp = 295e-9;
  g2.t_g_ref = 3.277e-3;
  g2.omega_pp_ref = two_pi * 77.85e3;
  v.push_back(g2);

  GatePreset g3 = g2;
  g3.id = "G3";
  g3.d = 0.9478866527;  // places Omega_pp at the published 78.69 kHz
  g3.t_ramp = 1260e-9;
  for (double khz : {1.24, 0.31, 0.64, 0.09, 0.55, 0.05, 0.54, 0.06, 0.57, 0.14, 0.73, 0.80})
    g3.xi_list.push_back(two_pi * 1e3 * khz);
  g3.t_g_ref = 3.936e-3;
  g3.omega_pp_ref = two_pi * 78.69e3;
  v.push_back(g3);

  GatePreset g4;
  g4.id = "G4";
  g4.k = 5;
  g4.N = 2;
  g4.d = -0.321124072331677;
  g4.eta = 0.04;
  g4.nu = nu;
  g4.t_ramp = 49e-9;
  g4.heating_rate = 100.0;
  g4.delta_omega_qubits = two_pi * 20.34e6;
  g4.t_g_ref = 368e-6;
  g4.omega_pp_ref = two_pi * 80.88e3;
  v.push_back(g4);
  return v;
}

}  // namespace

const std::vector<GatePreset>& gate_presets() {
  static const std::vector<GatePreset> presets = make_presets();
  return presets;
}

const GatePreset& gate_preset(std::string_view id) {
  for (const auto& g : gate_presets())
    if (g.id == id) return g;
  throw InvalidArgument("unknown gate preset '" + std::string(id) + "'");
}

SystemParams preset_system(const GatePreset& g) {
  SystemParams s;
  s.nu = g.nu;
  s.eta = g.eta;
  s.two_mode = true;
  s.delta_omega_qubits = g.delta_omega_qubits;
  return s;
}

GateCandidate preset_candidate(const GatePreset& g) {
  if (g.cardioid()) throw InvalidArgument("preset " + g.id + " is a cardioid gate");
  return candidate_at(g.k, g.N, g.d, preset_system(g));
}

const ClosureResult& preset_closure(const GatePreset& g) {
  if (!g.cardioid()) throw InvalidArgument("preset " + g.id + " has no detuning vector");
  static std::mutex mu;
  static std::map<std::string, ClosureResult> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(g.id);
  if (it != cache.end()) return it->second;
  CardioidOptions opt;
  opt.refine_d = false;
  opt.max_refine = 20;
  auto cl = refine_closure(g.k, g.d, g.xi_list, preset_system(g), opt);
  if (!cl.converged) throw NumericalError("preset " + g.id + ": detuning vector did not close");
  return cache.emplace(g.id, std::move(cl)).first->second;
}

SequencePlan preset_plan(const GatePreset& g, bool tqxy16, bool with_ramp) {
  const double ramp = with_ramp ? g.t_ramp : 0.0;
  SequencePlan plan;
  if (g.cardioid()) {
    const auto& cl = preset_closure(g);
    const double tpi0 = pi * g.k / (g.nu - cl.xi_list.front());
    plan = build_cardioid_sequence(cl.xi_list, g.nu, make_pulse(g.k, cl.d, tpi0, ramp));
    if (!tqxy16) plan = as_xy8(plan);
  } else {
    const auto c = preset_candidate(g);
    const auto pulse = make_pulse(g.k, c.d, c.t_pi, ramp);
    plan = tqxy16 ? build_tqxy16_sequence(c, pulse) : build_xy8_sequence(c, pulse);
  }
  return plan;
}

}  // namespace tqxy
