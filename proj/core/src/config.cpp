#include "tqxy/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "tqxy/presets.hpp"

namespace tqxy {

namespace {

using json = nlohmann::ordered_json;

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw InvalidArgument("config: '" + where + "' must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw InvalidArgument("config: unknown key '" + where + "." + it.key() + "'");
}

template <class T>
bool read(const json& obj, const std::string& where, const char* key, T& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return false;
  try {
    out = it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument("config: '" + where + "." + key + "' has the wrong type");
  }
  return true;
}

double positive(double v, const std::string& name) {
  if (!(v > 0.0)) throw InvalidArgument("config: '" + name + "' must be positive");
  return v;
}

void parse_system(const json& j, RunConfig& c) {
  check_keys(j, "system", {"nu_hz", "eta", "two_mode", "delta_omega_qubits_hz", "g_B_T_per_m",
                           "mass_amu"});
  c.system_given = true;
  double v = 0.0;
  if (read(j, "system", "nu_hz", v)) c.system.nu = two_pi * positive(v, "system.nu_hz");
  read(j, "system", "eta", c.system.eta);
  read(j, "system", "two_mode", c.system.two_mode);
  if (read(j, "system", "delta_omega_qubits_hz", v))
    c.system.delta_omega_qubits = two_pi * positive(v, "system.delta_omega_qubits_hz");
  double gB = 0.0, mass = 0.0;
  const bool has_g = read(j, "system", "g_B_T_per_m", gB);
  const bool has_m = read(j, "system", "mass_amu", mass);
  if (has_g != has_m) throw InvalidArgument("config: g_B_T_per_m and mass_amu go together");
  if (has_g) {
    IonPhysicalParams ion;
    ion.g_B = positive(gB, "system.g_B_T_per_m");
    ion.mass = positive(mass, "system.mass_amu") * phys::amu;
    c.system.physical = ion;
  }
}

void parse_gate(const json& j, RunConfig& c) {
  check_keys(j, "gate", {"preset", "harmonics", "k", "N", "d", "d_range", "ramp_ns", "sequence",
                         "cardioid", "xi_hz", "N_tilde"});
  auto& g = c.gate;
  std::string s;
  if (read(j, "gate", "preset", s)) g.preset = s;
  read(j, "gate", "harmonics", g.harmonics);
  read(j, "gate", "k", g.k);
  read(j, "gate", "N", g.N);
  double d = 0.0;
  if (read(j, "gate", "d", d)) g.d = d;
  std::vector<double> range;
  if (read(j, "gate", "d_range", range)) {
    if (range.size() != 2) throw InvalidArgument("config: 'gate.d_range' needs two values");
    g.d_range = {range[0], range[1]};
  }
  double ramp_ns = 0.0;
  if (read(j, "gate", "ramp_ns", ramp_ns)) {
    if (ramp_ns < 0.0) throw InvalidArgument("config: 'gate.ramp_ns' must be >= 0");
    g.t_ramp = ramp_ns * 1e-9;
  }
  read(j, "gate", "sequence", g.sequence);
  bool card = false;
  if (read(j, "gate", "cardioid", card) && card) g.sequence = "cardioid";
  if (g.sequence != "tqxy16" && g.sequence != "xy8" && g.sequence != "cardioid")
    throw InvalidArgument("config: 'gate.sequence' must be tqxy16, xy8 or cardioid");
  std::vector<double> xi_hz;
  if (read(j, "gate", "xi_hz", xi_hz))
    for (double x : xi_hz) g.xi_list.push_back(two_pi * positive(x, "gate.xi_hz"));
  read(j, "gate", "N_tilde", g.N_tilde);
}

void parse_noise(const json& j, RunConfig& c) {
  check_keys(j, "noise", {"delta_omega_hz", "delta_Omega", "delta_nu", "heating_rate",
                          "temperature_K", "N_bar", "crosstalk", "T2_star_s", "t2_convention"});
  auto& n = c.noise;
  double v = 0.0;
  if (read(j, "noise", "delta_omega_hz", v)) n.delta_omega = two_pi * v;
  read(j, "noise", "delta_Omega", n.delta_Omega);
  read(j, "noise", "delta_nu", n.delta_nu);
  read(j, "noise", "heating_rate", n.heating_rate);
  if (n.heating_rate < 0.0) throw InvalidArgument("config: 'noise.heating_rate' must be >= 0");
  if (read(j, "noise", "temperature_K", v)) n.temperature = positive(v, "noise.temperature_K");
  if (read(j, "noise", "N_bar", v)) n.N_bar = positive(v, "noise.N_bar");
  read(j, "noise", "crosstalk", n.crosstalk);
  if (read(j, "noise", "T2_star_s", v)) n.T2_star = positive(v, "noise.T2_star_s");
  std::string conv;
  if (read(j, "noise", "t2_convention", conv)) {
    if (conv == "angular")
      n.t2_convention = T2Convention::Angular;
    else if (conv == "hertz")
      n.t2_convention = T2Convention::Hertz;
    else
      throw InvalidArgument("config: 'noise.t2_convention' must be angular or hertz");
  }
}

void parse_numerics(const json& j, RunConfig& c) {
  check_keys(j, "numerics", {"dt_divisor", "steps_per_pulse", "n_a", "n_b", "nbar", "audit",
                             "audit_tol", "norm_tol", "model", "effective_second_mode",
                             "concurrent"});
  auto& n = c.numerics;
  read(j, "numerics", "dt_divisor", n.dt_divisor);
  read(j, "numerics", "steps_per_pulse", n.steps_per_pulse);
  read(j, "numerics", "n_a", c.model.n_a);
  read(j, "numerics", "n_b", c.model.n_b);
  read(j, "numerics", "nbar", n.nbar);
  read(j, "numerics", "audit", n.audit);
  read(j, "numerics", "audit_tol", n.audit_tol);
  read(j, "numerics", "norm_tol", n.norm_tol);
  read(j, "numerics", "effective_second_mode", c.model.effective_second_mode);
  read(j, "numerics", "concurrent", c.concurrent);
  std::string m;
  if (read(j, "numerics", "model", m)) {
    if (m == "Hs")
      c.model.variant = ModelVariant::Hs;
    else if (m == "Hf")
      c.model.variant = ModelVariant::Hf;
    else
      throw InvalidArgument("config: 'numerics.model' must be Hs or Hf");
  }
  if (n.dt_divisor < 1) throw InvalidArgument("config: 'numerics.dt_divisor' must be >= 1");
  if (n.steps_per_pulse < 0) throw InvalidArgument("config: 'numerics.steps_per_pulse' must be >= 0");
  if (c.model.n_a < 2 || c.model.n_b < 2) throw InvalidArgument("config: Fock cutoffs must be >= 2");
  if (n.nbar < 0.0) throw InvalidArgument("config: 'numerics.nbar' must be >= 0");
}

void parse_output(const json& j, RunConfig& c) {
  check_keys(j, "output", {"dir", "samples_per_pulse", "trajectory_panels"});
  read(j, "output", "dir", c.output.dir);
  read(j, "output", "samples_per_pulse", c.output.samples_per_pulse);
  read(j, "output", "trajectory_panels", c.output.trajectory_panels);
  if (c.output.samples_per_pulse < 2) throw InvalidArgument("config: 'output.samples_per_pulse' must be >= 2");
  if (c.output.trajectory_panels < 1) throw InvalidArgument("config: 'output.trajectory_panels' must be >= 1");
}

void parse_scan(const json& j, RunConfig& c) {
  check_keys(j, "scan", {"axis", "grid", "gates"});
  read(j, "scan", "axis", c.scan.axis);
  read(j, "scan", "grid", c.scan.grid);
  read(j, "scan", "gates", c.scan.gates);
}

void parse_budget(const json& j, RunConfig& c) {
  check_keys(j, "budget", {"gates", "columns", "long_crosstalk"});
  read(j, "budget", "gates", c.budget.gates);
  read(j, "budget", "columns", c.budget.columns);
  read(j, "budget", "long_crosstalk", c.budget.long_crosstalk);
  for (const auto& col : c.budget.columns) parse_column(col);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("config: not valid JSON: ") + e.what());
  }
  check_keys(j, "<root>", {"system", "gate", "noise", "numerics", "output", "scan", "budget"});
  RunConfig c;
  c.source = j;
  if (j.contains("system")) parse_system(j["system"], c);
  if (j.contains("gate")) parse_gate(j["gate"], c);
  if (j.contains("noise")) parse_noise(j["noise"], c);
  if (j.contains("numerics")) parse_numerics(j["numerics"], c);
  if (j.contains("output")) parse_output(j["output"], c);
  if (j.contains("scan")) parse_scan(j["scan"], c);
  if (j.contains("budget")) parse_budget(j["budget"], c);
  if (c.gate.preset) gate_preset(*c.gate.preset);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

SystemParams resolved_system(const RunConfig& cfg) {
  if (cfg.gate.preset) {
    if (cfg.system_given)
      throw InvalidArgument("config: a gate preset fixes the system; drop the 'system' block");
    return preset_system(gate_preset(*cfg.gate.preset));
  }
  SystemParams s = cfg.system;
  const auto& j = cfg.source.contains("system") ? cfg.source["system"] : nlohmann::ordered_json::object();
  if (s.physical) {
    if (!j.contains("eta")) s.eta = eta_from_physical(*s.physical, s.nu);
    if (!j.contains("delta_omega_qubits_hz")) s.delta_omega_qubits = qubit_splitting(*s.physical, s.nu);
  }
  validate_system(s);
  return s;
}

BudgetSettings budget_settings(const RunConfig& cfg) {
  BudgetSettings st;
  st.model = cfg.model;
  st.numerics = cfg.numerics;
  st.concurrent = cfg.concurrent;
  st.temperature = cfg.noise.temperature;
  st.t2_convention = cfg.noise.t2_convention;
  const auto noise = cfg.source.contains("noise") ? cfg.source["noise"] : json::object();
  if (noise.contains("delta_Omega")) st.delta_Omega = cfg.noise.delta_Omega;
  if (noise.contains("delta_nu")) st.delta_nu = cfg.noise.delta_nu;
  if (noise.contains("T2_star_s")) st.T2_star = *cfg.noise.T2_star;
  if (noise.contains("heating_rate")) st.heating_rate = cfg.noise.heating_rate;
  return st;
}

nlohmann::ordered_json config_manifest(const RunConfig& c) {
  json m;
  m["frequency_convention"] = "config frequencies in Hz; internal angular frequency = 2*pi*Hz (rad/s)";
  m["config"] = c.source;
  json r;
  r["model"] = c.model.variant == ModelVariant::Hs ? "Hs" : "Hf";
  r["n_a"] = c.model.n_a;
  r["n_b"] = c.model.n_b;
  r["effective_second_mode"] = c.model.effective_second_mode;
  r["dt_divisor"] = c.numerics.dt_divisor;
  r["steps_per_pulse"] = c.numerics.steps_per_pulse;
  r["nbar"] = c.numerics.nbar;
  r["audit"] = c.numerics.audit;
  r["audit_tol"] = c.numerics.audit_tol;
  r["norm_tol"] = c.numerics.norm_tol;
  r["noise"] = {{"delta_omega_rad_s", c.noise.delta_omega},
                {"delta_Omega", c.noise.delta_Omega},
                {"delta_nu", c.noise.delta_nu},
                {"heating_rate", c.noise.heating_rate},
                {"temperature_K", c.noise.temperature},
                {"crosstalk", c.noise.crosstalk},
                {"t2_convention", c.noise.t2_convention == T2Convention::Angular ? "angular" : "hertz"}};
  if (c.noise.N_bar) r["noise"]["N_bar"] = *c.noise.N_bar;
  if (c.noise.T2_star) r["noise"]["T2_star_s"] = *c.noise.T2_star;
  m["resolved"] = r;
  m["determinism"] = "no random numbers are drawn; identical inputs give identical outputs";
  return m;
}

}  // namespace tqxy
