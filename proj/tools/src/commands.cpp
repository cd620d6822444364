#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <tqxy/budget.hpp>
#include <tqxy/io.hpp>
#include <tqxy/pulse.hpp>
#include <tqxy/trajectory.hpp>

#include "gate_spec.hpp"

namespace tqxy::cli {

namespace {

using json = nlohmann::ordered_json;

json base_manifest(const std::string& command, const RunConfig& cfg) {
  json m;
  m["command"] = command;
  m["library"] = "tqxy 0.1.0";
  auto c = config_manifest(cfg);
  for (auto it = c.begin(); it != c.end(); ++it) m[it.key()] = it.value();
  return m;
}

json system_json(const SystemParams& s) {
  json j;
  j["nu_rad_s"] = s.nu;
  j["nu_hz"] = s.nu / two_pi;
  j["eta"] = s.eta;
  j["two_mode"] = s.two_mode;
  j["delta_omega_qubits_rad_s"] = s.delta_omega_qubits;
  return j;
}

json plan_summary(const SequencePlan& p) {
  json j;
  j["kind"] = p.kind;
  j["blocks"] = p.block_count();
  j["pulses"] = p.pulses.size();
  j["t_g_s"] = p.total_duration;
  j["k"] = p.shape.k;
  j["b"] = p.shape.b;
  j["c"] = p.shape.c;
  j["d"] = p.shape.d;
  j["t_ramp_s"] = p.shape.t_ramp;
  j["block_xi_rad_s"] = p.block_xi;
  return j;
}

json settings_json(const BudgetSettings& st) {
  json j;
  j["delta_Omega"] = st.delta_Omega;
  j["delta_nu"] = st.delta_nu;
  j["T2_star_s"] = st.T2_star;
  j["t2_convention"] = st.t2_convention == T2Convention::Angular ? "angular" : "hertz";
  if (st.heating_rate) j["heating_rate"] = *st.heating_rate;
  j["temperature_K"] = st.temperature;
  j["n_a"] = st.model.n_a;
  j["n_b"] = st.model.n_b;
  j["dt_divisor"] = st.numerics.dt_divisor;
  j["steps_per_pulse"] = st.numerics.steps_per_pulse;
  j["nbar"] = st.numerics.nbar;
  j["audit"] = st.numerics.audit;
  return j;
}

void log(const std::string& msg) { std::cerr << "[tqxy] " << msg << '\n'; }

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(4) << v;
  return os.str();
}

std::vector<std::string> selected_gates(const RunConfig& cfg, const std::vector<std::string>& listed) {
  if (!listed.empty()) return listed;
  if (cfg.gate.preset) return {*cfg.gate.preset};
  std::vector<std::string> all;
  for (const auto& g : gate_presets()) all.push_back(g.id);
  return all;
}

std::vector<BudgetColumn> budget_columns(const RunConfig& cfg, const std::string& gate) {
  std::vector<BudgetColumn> cols;
  if (!cfg.budget.columns.empty()) {
    for (const auto& c : cfg.budget.columns) cols.push_back(parse_column(c));
    return cols;
  }
  for (auto c : all_columns()) {
    const bool crosstalk = c == BudgetColumn::CT || c == BudgetColumn::CTStar;
    if (crosstalk && gate != "G4" && !cfg.budget.long_crosstalk) continue;
    cols.push_back(c);
  }
  return cols;
}

bool audits_passed(const ErrorBudgetRow& row) {
  for (const auto& c : row.columns)
    for (const auto& r : c.runs)
      if (!r.audit_passed) return false;
  return true;
}

}  // namespace

int cmd_design(const RunConfig& cfg, const Options& opt) {
  const SystemParams sys = resolved_system(cfg);
  std::vector<int> ks = cfg.gate.harmonics.empty() ? std::vector<int>{cfg.gate.k} : cfg.gate.harmonics;
  const bool range_given = cfg.source.contains("gate") && cfg.source["gate"].contains("d_range");
  const bool empty_range = range_given && cfg.gate.d_range.first == cfg.gate.d_range.second;
  std::vector<GateCandidate> all;
  for (int k : ks) {
    if (k < 1 || k % 2 == 0) throw InvalidArgument("design: harmonic k must be odd (f_k vanishes for even k)");
    if (empty_range) continue;
    EnumerateOptions eo;
    if (range_given) eo.d_range = cfg.gate.d_range;
    auto c = enumerate_gates(k, sys, eo);
    log("k = " + std::to_string(k) + ": " + std::to_string(c.size()) + " candidates");
    all.insert(all.end(), c.begin(), c.end());
  }
  const auto path = output_path(opt.out_dir, "design.csv");
  std::ofstream os(path);
  write_design_csv(os, all);
  auto m = base_manifest("design", cfg);
  m["system"] = system_json(sys);
  m["harmonics"] = ks;
  m["candidates"] = all.size();
  m["outputs"] = {path};
  write_json_file(output_path(opt.out_dir, "design_manifest.json"), m);
  log("wrote " + path);
  return 0;
}

int cmd_pulse(const RunConfig& cfg, const Options& opt) {
  const auto g = resolve_gate(cfg);
  const auto& rec = g.plan.pulses.front();
  const PulseParams p = g.plan.pulse_params(rec);
  const auto rep = validate_pulse(p);
  const PulseProfile prof(p);
  const auto path = output_path(opt.out_dir, "pulse.csv");
  std::ofstream os(path);
  write_pulse_waveform_csv(os, prof, true, std::max(cfg.output.samples_per_pulse, 2));
  const auto spec = modulated_spectrum(p);
  auto m = base_manifest("pulse", cfg);
  m["gate"] = g.label;
  m["system"] = system_json(g.system);
  m["pulse"] = {{"k", p.k},         {"b", p.b},           {"c", p.c},
                {"d", p.d},         {"t_pi_s", p.t_pi},   {"tau_s", p.tau},
                {"t_ramp_s", p.t_ramp}, {"omega_pp_rad_s", prof.omega_pp()},
                {"omega_pp_hz", prof.omega_pp() / two_pi},
                {"delta_omega_pi", prof.delta_omega_pi()}};
  m["validity"] = {{"ok", rep.ok}, {"violations", rep.violations}, {"max_abs_fz", rep.max_abs_fz},
                   {"edge_tail", rep.edge_tail}};
  m["fourier_f_n"] = spec.f;
  m["outputs"] = {path};
  write_json_file(output_path(opt.out_dir, "pulse_manifest.json"), m);
  log("Omega_pp = 2 pi x " + sci(prof.omega_pp() / two_pi) + " Hz, valid = " + (rep.ok ? "yes" : "no"));
  return (opt.ci && !rep.ok) ? 1 : 0;
}

int cmd_sequence(const RunConfig& cfg, const Options& opt) {
  const auto g = resolve_gate(cfg);
  const auto plan_path = output_path(opt.out_dir, "plan.json");
  {
    std::ofstream os(plan_path);
    write_plan_json(os, g.plan);
  }
  const auto wave_path = output_path(opt.out_dir, "sequence.csv");
  {
    std::ofstream os(wave_path);
    write_plan_waveform_csv(os, g.plan, cfg.output.samples_per_pulse);
  }
  auto m = base_manifest("sequence", cfg);
  m["gate"] = g.label;
  m["system"] = system_json(g.system);
  m["plan"] = plan_summary(g.plan);
  m["outputs"] = {plan_path, wave_path};
  write_json_file(output_path(opt.out_dir, "sequence_manifest.json"), m);
  log(std::to_string(g.plan.pulses.size()) + " pulses, t_g = " + sci(g.plan.total_duration) + " s");
  return 0;
}

int cmd_trajectory(const RunConfig& cfg, const Options& opt) {
  const auto g = resolve_gate(cfg);
  PhaseSpaceOptions po;
  po.eta = g.system.eta;
  po.nu = g.system.nu;
  po.panels_per_period = cfg.output.trajectory_panels;
  if (g.system.two_mode)
    po.dispersive_shift = second_mode_shift(modulated_spectrum(g.plan.shape), g.system.eta, g.system.nu);
  const auto res = plan_phase_space(g.plan, po, true);
  const auto path = output_path(opt.out_dir, "trajectory.csv");
  {
    std::ofstream os(path);
    write_trajectory_csv(os, res.samples);
  }
  const double F = analytic_bell_fidelity(res.alpha, res.theta, cfg.numerics.nbar, BellTarget::PhiPlus);
  auto m = base_manifest("trajectory", cfg);
  m["gate"] = g.label;
  m["system"] = system_json(g.system);
  m["plan"] = plan_summary(g.plan);
  m["alpha_end"] = {res.alpha.real(), res.alpha.imag()};
  m["theta_end_rad"] = res.theta;
  m["theta_target_rad"] = pi / 8.0;
  m["dispersive_shift_rad_s"] = po.dispersive_shift;
  m["analytic_fidelity"] = F;
  m["outputs"] = {path};
  write_json_file(output_path(opt.out_dir, "trajectory_manifest.json"), m);
  log("|alpha(t_g)| = " + sci(std::abs(res.alpha)) + ", theta - pi/8 = " + sci(res.theta - pi / 8.0));
  return 0;
}

int cmd_simulate(const RunConfig& cfg, const Options& opt) {
  const auto g = resolve_gate(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const GateHamiltonian H(cfg.model, g.plan, g.system, cfg.noise);
  PropagationResult r;
  if (cfg.noise.heating_rate > 0.0) {
    r = propagate_lindblad(H, thermal_density(initial_qubits(BellTarget::PhiPlusTilde), cfg.model.n_a,
                                              cfg.numerics.nbar),
                           cfg.numerics, BellTarget::PhiPlusTilde);
  } else {
    r = simulate_gate(H, cfg.numerics, BellTarget::PhiPlusTilde);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto m = base_manifest("simulate", cfg);
  m["gate"] = g.label;
  m["system"] = system_json(g.system);
  m["plan"] = plan_summary(g.plan);
  m["hilbert_dim"] = H.dim();
  m["effective_delta_omega_rad_s"] = cfg.noise.effective_delta_omega();
  m["fastest_frequency_rad_s"] = H.fastest_frequency();
  m["result"] = propagation_json(r);
  m["seconds"] = secs;
  const auto path = output_path(opt.out_dir, "simulate.json");
  write_json_file(path, m);
  log("infidelity = " + sci(r.infidelity) +
      (r.audit_delta ? ", audit delta = " + sci(*r.audit_delta) : std::string()));
  return (opt.ci && !r.audit_passed) ? 1 : 0;
}

int cmd_scan(const RunConfig& cfg, const Options& opt) {
  const auto& axis = cfg.scan.axis;
  if (cfg.scan.grid.empty()) throw InvalidArgument("scan: grid must not be empty");
  if (axis != "T2" && axis != "deltaOmega" && axis != "deltaNu" && axis != "heating" && axis != "ramp")
    throw InvalidArgument("scan: axis must be T2, deltaOmega, deltaNu, heating or ramp");
  const BudgetSettings base_st = budget_settings(cfg);
  std::vector<ScanPoint> points;
  bool all_ok = true;
  for (const auto& id : selected_gates(cfg, cfg.scan.gates)) {
    const GatePreset& gate = gate_preset(id);
    if (gate.cardioid()) preset_closure(gate);
    const double baseline =
        run_scenario(gate, make_scenario(gate, BudgetColumn::TQXY16, 1, base_st), base_st.numerics).infidelity;
    auto one = [&, baseline](double v) {
      ScanPoint p;
      p.gate = id;
      p.axis = axis;
      p.value = v;
      try {
        BudgetSettings st = base_st;
        GatePreset g = gate;
        double total = 0.0;
        int n = 0;
        auto run = [&](BudgetColumn c, int sign) {
          total += run_scenario(g, make_scenario(g, c, sign, st), st.numerics).infidelity;
          ++n;
        };
        if (axis == "T2") {
          if (v == 0.0) {
            run(BudgetColumn::TQXY16, 1);
          } else {
            st.T2_star = 1.0 / v;
            run(BudgetColumn::T2, 1);
            run(BudgetColumn::T2, -1);
          }
        } else if (axis == "deltaOmega") {
          st.delta_Omega = v;
          run(BudgetColumn::DeltaOmega, 1);
          run(BudgetColumn::DeltaOmega, -1);
        } else if (axis == "deltaNu") {
          st.delta_nu = v;
          run(BudgetColumn::DeltaNu, 1);
          run(BudgetColumn::DeltaNu, -1);
        } else if (axis == "heating") {
          st.heating_rate = v;
          run(BudgetColumn::Heating, 1);
        } else {
          g.t_ramp = v * 1e-9;
          run(BudgetColumn::CTStar, 1);
        }
        p.infidelity = total / n;
        p.relative = p.infidelity - baseline;
      } catch (const std::exception& e) {
        p.status = std::string("error: ") + e.what();
      }
      return p;
    };
    if (cfg.concurrent) {
      std::vector<std::future<ScanPoint>> futs;
      for (double v : cfg.scan.grid) futs.push_back(std::async(std::launch::async, one, v));
      for (auto& f : futs) points.push_back(f.get());
    } else {
      for (double v : cfg.scan.grid) points.push_back(one(v));
    }
  }
  for (const auto& p : points) {
    all_ok = all_ok && p.status == "ok";
    log(p.gate + " " + p.axis + " = " + sci(p.value) + ": " +
        (p.status == "ok" ? sci(p.relative) : p.status));
  }
  const auto path = output_path(opt.out_dir, "scan.csv");
  {
    std::ofstream os(path);
    write_scan_csv(os, points);
  }
  auto m = base_manifest("scan", cfg);
  m["budget_settings"] = settings_json(base_st);
  m["axis_units"] = axis == "T2" ? "1/T2* in 1/s" : axis == "heating" ? "quanta/s" : axis == "ramp" ? "ns" : "fractional";
  m["outputs"] = {path};
  write_json_file(output_path(opt.out_dir, "scan_manifest.json"), m);
  return (opt.ci && !all_ok) ? 1 : 0;
}

int cmd_budget(const RunConfig& cfg, const Options& opt) {
  const BudgetSettings st = budget_settings(cfg);
  std::vector<ErrorBudgetRow> rows;
  auto m = base_manifest("budget", cfg);
  m["budget_settings"] = settings_json(st);
  bool ok = true;
  for (const auto& id : selected_gates(cfg, cfg.budget.gates)) {
    log("running " + id);
    rows.push_back(run_error_budget(gate_preset(id), budget_columns(cfg, id), st));
    m["rows"].push_back(budget_json(rows.back()));
    ok = ok && audits_passed(rows.back());
  }
  const auto path = output_path(opt.out_dir, "budget.csv");
  {
    std::ofstream os(path);
    write_budget_csv(os, rows);
  }
  m["outputs"] = {path};
  write_json_file(output_path(opt.out_dir, "budget_manifest.json"), m);
  log("wrote " + path);
  return (opt.ci && !ok) ? 1 : 0;
}

int cmd_reproduce_table1(const RunConfig& cfg, const Options& opt) {
  const BudgetSettings st = budget_settings(cfg);
  std::vector<ErrorBudgetRow> rows;
  auto m = base_manifest("reproduce-table1", cfg);
  m["budget_settings"] = settings_json(st);
  std::ostringstream cmp;
  cmp << "gate,column,ours,reference,bound,tolerance,status\n" << std::scientific << std::setprecision(4);
  bool ok = true;
  for (const auto& g : gate_presets()) {
    log("running " + g.id);
    rows.push_back(run_error_budget(g, budget_columns(cfg, g.id), st));
    const auto& row = rows.back();
    m["rows"].push_back(budget_json(row));
    ok = ok && audits_passed(row);
    const auto& ref = table1_reference(g.id);
    for (std::size_t i = 0; i < all_columns().size(); ++i) {
      const auto col = all_columns()[i];
      const auto* res = row.find(col);
      const auto& pv = ref.columns[i];
      const char* bound = pv.bound == ReferenceValue::Bound::Below ? "<"
                          : pv.bound == ReferenceValue::Bound::Above ? ">"
                                                                 : "=";
      const double tol = table1_tolerance(col);
      cmp << g.id << ',' << column_name(col) << ',';
      if (!res) {
        cmp << ",," << bound << ',' << tol << ",skipped\n";
        continue;
      }
      const bool pass = matches_reference(pv, res->relative, tol);
      ok = ok && pass;
      cmp << res->relative << ',' << pv.value << ',' << bound << ',' << tol << ',' << (pass ? "PASS" : "FAIL") << '\n';
    }
    if (row.total_complete) {
      const bool pass = std::abs(row.total - ref.total) <= 0.5 * ref.total;
      ok = ok && pass;
      cmp << g.id << ",Total," << row.total << ',' << ref.total << ",=,0.5," << (pass ? "PASS" : "FAIL") << '\n';
    }
  }
  const auto path = output_path(opt.out_dir, "table1.csv");
  {
    std::ofstream os(path);
    write_budget_csv(os, rows);
  }
  const auto cmp_path = output_path(opt.out_dir, "table1_comparison.csv");
  write_text_file(cmp_path, cmp.str());
  m["outputs"] = {path, cmp_path};
  write_json_file(output_path(opt.out_dir, "table1_manifest.json"), m);
  std::cout << cmp.str();
  return (opt.ci && !ok) ? 1 : 0;
}

}  // namespace tqxy::cli
