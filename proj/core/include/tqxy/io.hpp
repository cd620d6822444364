#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tqxy/budget.hpp"
#include "tqxy/gate_search.hpp"

namespace tqxy {

/// k,N,d,xi_rad_s,tg_s,omega_pp_rad_s,speed_ratio
void write_design_csv(std::ostream& os, const std::vector<GateCandidate>& candidates);

/// gate,column,infidelity,relative_to  plus one Total line per complete row.
void write_budget_csv(std::ostream& os, const std::vector<ErrorBudgetRow>& rows);

struct ScanPoint {
  std::string gate;
  std::string axis;
  double value = 0.0;
  double infidelity = 0.0;
  double relative = 0.0;
  std::string status = "ok";
};

/// gate,axis,value,infidelity,relative,status
void write_scan_csv(std::ostream& os, const std::vector<ScanPoint>& points);

/// Per-run numerical diagnostics for manifests.
nlohmann::ordered_json propagation_json(const PropagationResult& r);
nlohmann::ordered_json budget_json(const ErrorBudgetRow& row);

/// Creates the directory (and parents) if needed; returns dir/name.
std::string output_path(const std::string& dir, const std::string& name);

void write_text_file(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const nlohmann::ordered_json& j);

}  // namespace tqxy
