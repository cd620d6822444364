#pragma once

#include <array>

namespace tqxy {

/// Shaped pi-pulse descriptor.  The ansatz parameters (k, b, c, d) are
/// dimensionless; t_pi, tau and t_ramp are in seconds.
struct PulseParams {
  int k = 9;
  double b = 1.0 / 3.0;
  double c = 0.042;
  double d = 0.0;
  double t_pi = 0.0;
  double tau = 0.0;  // block period, 2 t_pi for the back-to-back design
  double t_ramp = 0.0;
  double delta_omega_pi = 0.0;  // filled in by PulseProfile
};

struct TableRow {
  int k;
  double b;          // value used by the library
  double b_printed;  // value as printed in the parameter table
  double c;
  double d_max;      // signed: the sign selects the branch used in practice
};

/// Envelope parameters per odd harmonic k = 3..15.
const std::array<TableRow, 7>& appendix_a_table();

/// Row for harmonic k; throws InvalidArgument outside the table.
const TableRow& table_row(int k);

/// Pulse from the table row of k with the given amplitude and timing.
PulseParams make_pulse(int k, double d, double t_pi, double t_ramp = 0.0);

}  // namespace tqxy
