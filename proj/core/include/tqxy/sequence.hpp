#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "tqxy/gate_search.hpp"
#include "tqxy/pulse_params.hpp"

namespace tqxy {

enum class Axis { X, Y };

char axis_char(Axis a);

struct PulseRecord {
  int index = 0;
  int block = 0;
  Axis axis = Axis::X;
  int sign = 1;  // drive-phase sign of qubit 2
  double t_start = 0.0;
  double t_pi = 0.0;
  double xi = 0.0;
};

/// Timed pi-pulse schedule.  The pulse shape parameters (k, b, c, d, ramp)
/// are shared; t_pi may change from block to block.
struct SequencePlan {
  std::string kind;  // "tqxy16", "xy8" or "cardioid"
  PulseParams shape;
  double nu = 0.0;
  std::vector<double> block_xi;
  std::vector<PulseRecord> pulses;
  double total_duration = 0.0;

  int block_count() const { return static_cast<int>(block_xi.size()); }
  /// Pulse parameters of a given record (t_pi and tau set per block).
  PulseParams pulse_params(const PulseRecord& r) const;
  /// Index of the pulse active at t, clamped to [0, size).
  std::size_t pulse_at(double t) const;
  /// Modulation function of the whole schedule.
  double fz(double t) const;
};

/// Axis pattern of one 16-pulse block.
const std::array<Axis, 16>& tqxy16_axes();

SequencePlan build_tqxy16_sequence(const GateCandidate& candidate, const PulseParams& pulse);
SequencePlan build_xy8_sequence(const GateCandidate& candidate, const PulseParams& pulse);
/// Variable-block plan: block j uses t_pi = pi k / (nu - xi_j).
SequencePlan build_cardioid_sequence(const std::vector<double>& xi_list, double nu,
                                     const PulseParams& pulse);

/// Copy of a plan with every drive sign set to +1 (plain XY8 phases).
SequencePlan as_xy8(const SequencePlan& plan);

void write_plan_json(std::ostream& os, const SequencePlan& plan);
SequencePlan read_plan_json(std::istream& is);

/// Samples the schedule: t_s, fz, omega_x, omega_y (qubit-1 drive).
void write_plan_waveform_csv(std::ostream& os, const SequencePlan& plan, int samples_per_pulse);

}  // namespace tqxy
