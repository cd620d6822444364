#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tqxy/budget.hpp"
#include "tqxy/dynamics.hpp"
#include "tqxy/gate_search.hpp"

namespace tqxy {

struct GateConfig {
  std::optional<std::string> preset;
  std::vector<int> harmonics;  // for design; defaults to {k}
  int k = 9;
  int N = 0;
  std::optional<double> d;
  std::pair<double, double> d_range{0.0, 0.0};
  double t_ramp = 0.0;  // s
  std::string sequence = "tqxy16";  // tqxy16 | xy8 | cardioid
  std::vector<double> xi_list;      // rad/s
  int N_tilde = 0;
};

struct OutputConfig {
  std::string dir = ".";
  int samples_per_pulse = 64;
  int trajectory_panels = 8;
};

struct ScanConfig {
  std::string axis;  // T2 | deltaOmega | deltaNu | heating | ramp
  std::vector<double> grid;
  std::vector<std::string> gates;
};

struct BudgetConfig {
  std::vector<std::string> gates;
  std::vector<std::string> columns;
  bool long_crosstalk = false;  // CT and CT* for G1..G3
};

struct RunConfig {
  SystemParams system;
  bool system_given = false;
  GateConfig gate;
  NoiseConfig noise;
  HamiltonianModel model;
  NumericsConfig numerics;
  bool concurrent = true;
  OutputConfig output;
  ScanConfig scan;
  BudgetConfig budget;
  nlohmann::ordered_json source;  // parsed document as given
};

/// Parses a JSON configuration.  Unknown keys at any level are rejected.
/// Frequencies are given in Hz (keys ending in _hz) and stored as rad/s.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// System parameters: the preset's when a preset is named (a system block is
/// then rejected), otherwise the system block with eta and the qubit
/// splitting derived from the physical inputs when those are given.
SystemParams resolved_system(const RunConfig& cfg);

/// Budget settings implied by the noise and numerics blocks.
BudgetSettings budget_settings(const RunConfig& cfg);

/// Everything that affects a result, for the run manifest.
nlohmann::ordered_json config_manifest(const RunConfig& cfg);

}  // namespace tqxy
