#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tqxy/dynamics.hpp"
#include "tqxy/presets.hpp"

namespace tqxy {

enum class BudgetColumn { XY8, TQXY16, TwoMode, CT, CTStar, T2, DeltaOmega, DeltaNu, Heating };

/// Reference-table column order.
const std::array<BudgetColumn, 9>& all_columns();
std::string_view column_name(BudgetColumn c);
BudgetColumn parse_column(std::string_view name);

struct BudgetSettings {
  HamiltonianModel model;      // n_a, n_b; variant is chosen per column
  NumericsConfig numerics;
  double delta_Omega = 5e-3;
  double delta_nu = 1e-5;
  double T2_star = 500e-6;
  T2Convention t2_convention = T2Convention::Angular;
  std::optional<double> heating_rate;  // default: the preset's rate
  double temperature = 300.0;
  bool concurrent = true;
};

struct ColumnResult {
  BudgetColumn column = BudgetColumn::TQXY16;
  double infidelity = 0.0;  // absolute; mean of the +/- runs where applicable
  double relative = 0.0;    // infidelity - I(TQXY16); equals infidelity for XY8 and TQXY16
  std::string relative_to;  // "none" or "TQXY16"
  std::vector<PropagationResult> runs;
  double seconds = 0.0;
};

struct ErrorBudgetRow {
  std::string gate;
  std::vector<ColumnResult> columns;
  double total = 0.0;        // I(TQXY16) + sum of relative columns except XY8 and CT
  bool total_complete = false;

  const ColumnResult* find(BudgetColumn c) const;
};

/// Runs the requested scenarios (TQXY16 is always included).  Scenarios run
/// concurrently when settings.concurrent is set; results keep reference-table order.
ErrorBudgetRow run_error_budget(const GatePreset& gate, const std::vector<BudgetColumn>& columns,
                                const BudgetSettings& settings);

/// Inputs of a single budget scenario, exposed for scans.
struct Scenario {
  HamiltonianModel model;
  NoiseConfig noise;
  bool tqxy16 = true;
  bool ramp = false;
  bool lindblad = false;
};

Scenario make_scenario(const GatePreset& gate, BudgetColumn column, int sign,
                       const BudgetSettings& settings);
PropagationResult run_scenario(const GatePreset& gate, const Scenario& s, const NumericsConfig& num);

/// Published error-budget values (1e-4 units stripped, plain infidelities).
struct ReferenceValue {
  enum class Bound { Exact, Below, Above };
  double value = 0.0;
  Bound bound = Bound::Exact;
};

struct Table1Reference {
  std::string gate;
  std::array<ReferenceValue, 9> columns;  // all_columns() order
  double total = 0.0;
};

const std::array<Table1Reference, 4>& table1_reference();
const Table1Reference& table1_reference(std::string_view gate);

/// Relative tolerance used when comparing against the reference table: 1.0 for the
/// crosstalk columns, 0.5 otherwise.  Bounds are checked as inequalities.
double table1_tolerance(BudgetColumn c);
bool matches_reference(const ReferenceValue& ref, double value, double rel_tol);

}  // namespace tqxy
