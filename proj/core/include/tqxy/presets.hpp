#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tqxy/gate_search.hpp"
#include "tqxy/sequence.hpp"
#include "tqxy/trajectory.hpp"

namespace tqxy {

/// Built-in gate definitions G1..G4.
struct GatePreset {
  std::string id;
  int k = 0;
  int N = 0;          // TQXY16 blocks (seed N for the cardioid gate)
  double d = 0.0;
  double eta = 0.0;
  double nu = 0.0;    // rad/s
  double t_ramp = 0.0;
  double heating_rate = 0.0;        // quanta/s
  double delta_omega_qubits = 0.0;  // rad/s
  std::vector<double> xi_list;      // rad/s; nonempty for the cardioid gate
  double t_g_ref = 0.0;             // s, published
  double omega_pp_ref = 0.0;        // rad/s, published
  bool cardioid() const { return !xi_list.empty(); }
};

const std::vector<GatePreset>& gate_presets();
const GatePreset& gate_preset(std::string_view id);

SystemParams preset_system(const GatePreset& g);

/// Candidate for a circular preset (throws for the cardioid gate).
GateCandidate preset_candidate(const GatePreset& g);

/// Block detunings of the cardioid preset after closing alpha and theta with
/// d held fixed.  Computed once per process.
const ClosureResult& preset_closure(const GatePreset& g);

/// TQXY16 plan of a preset, or the XY8 variant (all drive signs +1).
SequencePlan preset_plan(const GatePreset& g, bool tqxy16 = true, bool with_ramp = false);

}  // namespace tqxy
