#include "tqxy/pulse_params.hpp"

#include <string>

#include "tqxy/types.hpp"

namespace tqxy {

const std::array<TableRow, 7>& appendix_a_table() {
  // k = 3 and 9 carry b = 1/3; the printed column keeps the rounded 0.33.
  static const std::array<TableRow, 7> table{{
      {3, 1.0 / 3.0, 0.33, 0.035, -2.3},
      {5, 0.30, 0.30, 0.04, -1.5},
      {7, 0.29, 0.29, 0.05, 2.4},
      {9, 1.0 / 3.0, 0.33, 0.042, 2.3},
      {11, 0.34, 0.34, 0.03, 1.9},
      {13, 0.35, 0.35, 0.035, 1.7},
      {15, 0.30, 0.30, 0.035, 2.3},
  }};
  return table;
}

const TableRow& table_row(int k) {
  for (const auto& row : appendix_a_table())
    if (row.k == k) return row;
  throw InvalidArgument("no envelope parameters for harmonic k=" + std::to_string(k));
}

PulseParams make_pulse(int k, double d, double t_pi, double t_ramp) {
  const auto& row = table_row(k);
  PulseParams p;
  p.k = k;
  p.b = row.b;
  p.c = row.c;
  p.d = d;
  p.t_pi = t_pi;
  p.tau = 2.0 * t_pi;
  p.t_ramp = t_ramp;
  return p;
}

}  // namespace tqxy
