#include "tqxy/io.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace tqxy {

void write_design_csv(std::ostream& os, const std::vector<GateCandidate>& cands) {
  os << "k,N,d,xi_rad_s,tg_s,omega_pp_rad_s,speed_ratio\n" << std::setprecision(12);
  for (const auto& c : cands)
    os << c.k << ',' << c.N << ',' << c.d << ',' << c.xi << ',' << c.t_g << ',' << c.omega_pp << ','
       << c.speed_ratio << '\n';
}

void write_budget_csv(std::ostream& os, const std::vector<ErrorBudgetRow>& rows) {
  os << "gate,column,infidelity,relative_to\n" << std::setprecision(6) << std::scientific;
  for (const auto& row : rows) {
    for (const auto& c : row.columns)
      os << row.gate << ',' << column_name(c.column) << ',' << c.relative << ',' << c.relative_to << '\n';
    if (row.total_complete) os << row.gate << ",Total," << row.total << ",sum\n";
  }
  os << std::defaultfloat;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanPoint>& pts) {
  os << "gate,axis,value,infidelity,relative,status\n" << std::setprecision(10);
  for (const auto& p : pts)
    os << p.gate << ',' << p.axis << ',' << p.value << ',' << p.infidelity << ',' << p.relative << ','
       << p.status << '\n';
}

nlohmann::ordered_json propagation_json(const PropagationResult& r) {
  nlohmann::ordered_json j;
  j["fidelity"] = r.fidelity;
  j["infidelity"] = r.infidelity;
  j["steps_per_pulse_first"] = r.steps_per_pulse;
  j["total_steps"] = r.total_steps;
  j["norm_error"] = r.norm_error;
  j["trace_error"] = r.trace_error;
  j["hermiticity_error"] = r.hermiticity_error;
  j["min_eigenvalue"] = r.min_eigenvalue;
  if (r.audit_delta) {
    j["audit_delta"] = *r.audit_delta;
    j["audit_passed"] = r.audit_passed;
  }
  return j;
}

nlohmann::ordered_json budget_json(const ErrorBudgetRow& row) {
  nlohmann::ordered_json j;
  j["gate"] = row.gate;
  for (const auto& c : row.columns) {
    nlohmann::ordered_json cj;
    cj["infidelity"] = c.infidelity;
    cj["relative"] = c.relative;
    cj["relative_to"] = c.relative_to;
    cj["seconds"] = c.seconds;
    for (const auto& r : c.runs) cj["runs"].push_back(propagation_json(r));
    j["columns"][std::string(column_name(c.column))] = cj;
  }
  if (row.total_complete) j["total"] = row.total;
  return j;
}

std::string output_path(const std::string& dir, const std::string& name) {
  std::filesystem::path p(dir.empty() ? "." : dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw Error("cannot create output directory '" + p.string() + "': " + ec.message());
  return (p / name).string();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

void write_json_file(const std::string& path, const nlohmann::ordered_json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace tqxy
