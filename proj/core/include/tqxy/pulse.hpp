#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tqxy/pulse_params.hpp"

namespace tqxy {

/// Ansatz value and its first two derivatives with respect to u = (t - t_i)/t_pi.
struct FzValue {
  double f = 0.0;
  double df = 0.0;
  double d2f = 0.0;
};

FzValue fz_ansatz(const PulseParams& pulse, double u);

struct FzSample {
  double value = 0.0;
  bool in_range = true;  // false when |f_z| > 1 (unphysical)
};

/// f_z at absolute time t for a pulse starting at t_i.
FzSample fz(const PulseParams& pulse, double t, double t_i);

/// Rabi profile of one shaped pi pulse.  Built once, then evaluated cheaply.
/// The profile is renormalised so that its area is exactly pi; with a ramp the
/// sin^2 edges are applied first.
class PulseProfile {
 public:
  explicit PulseProfile(const PulseParams& pulse);

  const PulseParams& params() const { return p_; }

  /// Omega(t) in rad/s, t measured from the pulse start, zero outside [0, t_pi].
  double omega(double t) const;
  /// Dimensionless profile: Omega(u) t_pi.
  double omega_unit(double u) const;
  /// Unnormalised -f'/sqrt(1-f^2) with the edge series, no ramp.
  double omega_raw_unit(double u) const;

  double area() const;      // integral of omega over the pulse, rad
  double omega_pp() const;  // maximum of omega, rad/s
  double delta_omega_pi() const { return scale_ - 1.0; }
  double edge_omega_unit() const { return edge_; }

  static constexpr double edge_zone = 3e-3;

 private:
  double base_unit(double u) const;
  std::vector<double> breakpoints() const;

  PulseParams p_;
  double edge_ = 0.0;   // sqrt(-f''(0))
  double scale_ = 1.0;  // 1 + delta_omega_pi
  double omega_pp_ = 0.0;
};

struct ValidityReport {
  bool ok = true;
  std::vector<std::string> violations;
  double max_abs_fz = 0.0;
  double edge_tail = 0.0;
};

ValidityReport validate_pulse(const PulseParams& pulse);

/// Samples one pulse on n points: t_s, fz, omega_x, omega_y.
void write_pulse_waveform_csv(std::ostream& os, const PulseProfile& profile, bool axis_x,
                              int n_samples);

}  // namespace tqxy
