#include <sstream>

#include "doctest.h"
#include <tqxy/types.hpp>
#include <tqxy/config.hpp>
#include <tqxy/io.hpp>
#include <tqxy/presets.hpp>

using namespace tqxy;
using doctest::Approx;

TEST_CASE("config parsing") {
  const auto c = parse_config(R"({
    "system": {"nu_hz": 220000, "eta": 0.005, "delta_omega_qubits_hz": 2.54e6},
    "gate": {"k": 9, "N": 5, "ramp_ns": 149},
    "noise": {"delta_omega_hz": 1000, "T2_star_s": 5e-4, "t2_convention": "hertz"},
    "numerics": {"n_a": 20, "model": "Hf"}
  })");
  CHECK(c.system.nu == Approx(two_pi * 220e3));
  CHECK(c.system.delta_omega_qubits == Approx(two_pi * 2.54e6));
  CHECK(c.noise.delta_omega == Approx(two_pi * 1000));
  CHECK(c.gate.t_ramp == Approx(149e-9));
  CHECK(c.model.n_a == 20);
  CHECK(c.model.variant == ModelVariant::Hf);
  CHECK(c.noise.t2_convention == T2Convention::Hertz);
  CHECK(resolved_system(c).eta == 0.005);
}

TEST_CASE("config rejections") {
  CHECK_THROWS_AS(parse_config(R"({"sytem": {}})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config(R"({"noise": {"delta_omega": 1}})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config(R"({"gate": {"preset": "G9"}})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config(R"({"gate": {"sequence": "cpmg"}})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config("{not json"), InvalidArgument);
  CHECK_THROWS_AS(parse_config(R"({"budget": {"columns": ["XY4"]}})"), InvalidArgument);
  const auto both = parse_config(R"({"gate": {"preset": "G1"}, "system": {"nu_hz": 1e5, "eta": 0.01}})");
  CHECK_THROWS_AS(resolved_system(both), InvalidArgument);
}

TEST_CASE("physical system inputs") {
  const auto c = parse_config(R"({"system": {"nu_hz": 220000, "g_B_T_per_m": 19.09, "mass_amu": 171}})");
  const auto s = resolved_system(c);
  CHECK(s.eta == Approx(eta_from_physical(*s.physical, s.nu)));
  CHECK(s.delta_omega_qubits > 0.0);
  CHECK_THROWS_AS(parse_config(R"({"system": {"nu_hz": 220000, "g_B_T_per_m": 19.09}})"), InvalidArgument);
}

TEST_CASE("manifest carries every setting") {
  const auto c = parse_config(R"({"gate": {"preset": "G4"}, "noise": {"heating_rate": 100}})");
  const auto m = config_manifest(c);
  CHECK(m.contains("frequency_convention"));
  CHECK(m["config"]["gate"]["preset"] == "G4");
  for (const char* key : {"model", "n_a", "n_b", "dt_divisor", "steps_per_pulse", "nbar", "audit_tol", "norm_tol"})
    CHECK(m["resolved"].contains(key));
  CHECK(m["resolved"]["noise"]["heating_rate"] == 100.0);
  CHECK(m.contains("determinism"));
}

TEST_CASE("budget settings follow the noise block") {
  const auto c = parse_config(R"({"noise": {"delta_Omega": 0.01, "T2_star_s": 1e-3}})");
  const auto st = budget_settings(c);
  CHECK(st.delta_Omega == 0.01);
  CHECK(st.T2_star == 1e-3);
  CHECK(st.delta_nu == 1e-5);
  CHECK_FALSE(st.heating_rate.has_value());
}

TEST_CASE("CSV layouts") {
  std::ostringstream d;
  write_design_csv(d, {});
  CHECK(d.str() == "k,N,d,xi_rad_s,tg_s,omega_pp_rad_s,speed_ratio\n");

  ErrorBudgetRow row;
  row.gate = "G4";
  ColumnResult tq;
  tq.column = BudgetColumn::TQXY16;
  tq.infidelity = tq.relative = 1.2e-5;
  tq.relative_to = "none";
  row.columns.push_back(tq);
  std::ostringstream b;
  write_budget_csv(b, {row});
  CHECK(b.str().rfind("gate,column,infidelity,relative_to\nG4,TQXY16,", 0) == 0);

  std::ostringstream s;
  write_scan_csv(s, {ScanPoint{"G1", "T2", 0.0, 1e-6, 0.0, "ok"}});
  CHECK(s.str().rfind("gate,axis,value,infidelity,relative,status\n", 0) == 0);
}

TEST_CASE("budget columns and reference-table lookups") {
  CHECK(all_columns().size() == 9);
  for (auto c : all_columns()) CHECK(parse_column(column_name(c)) == c);
  CHECK(table1_reference("G4").total == Approx(1.14e-4));
  CHECK(matches_reference({0.38e-4, ReferenceValue::Bound::Exact}, 0.5e-4, 0.5));
  CHECK_FALSE(matches_reference({0.38e-4, ReferenceValue::Bound::Exact}, 0.6e-4, 0.5));
  CHECK(matches_reference({1e-6, ReferenceValue::Bound::Below}, 2e-7, 0.5));
  CHECK_FALSE(matches_reference({1e-6, ReferenceValue::Bound::Below}, 2e-6, 0.5));
}

TEST_CASE("presets") {
  std::vector<std::string> ids;
  for (const auto& g : gate_presets()) ids.push_back(g.id);
  CHECK(ids == std::vector<std::string>{"G1", "G2", "G3", "G4"});
  CHECK(gate_preset("G1").t_ramp == Approx(149e-9));
  CHECK(gate_preset("G2").t_ramp == Approx(295e-9));
  CHECK(gate_preset("G3").t_ramp == Approx(1260e-9));
  CHECK(gate_preset("G4").t_ramp == Approx(49e-9));
  CHECK(gate_preset("G1").heating_rate == 35.0);
  CHECK(gate_preset("G4").heating_rate == 100.0);
  CHECK(gate_preset("G3").xi_list.size() == 12);
  CHECK_THROWS_AS(gate_preset("G5"), InvalidArgument);
}
