#include "tqxy/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "tqxy/types.hpp"

namespace tqxy {

FzValue fz_ansatz(const PulseParams& p, double u) {
  const double v = u - 0.5;
  const double amp = p.d * std::sin(pi * p.k / 2.0) / (pi * p.k * p.b);
  const double zp = (v + p.b) / p.c;
  const double zm = (v - p.b) / p.c;
  const double gp = std::exp(-zp * zp);
  const double gm = std::exp(-zm * zm);
  const double norm = 2.0 / (std::sqrt(pi) * p.c);

  const double e0 = std::erf(zp) - std::erf(zm);
  const double e1 = norm * (gp - gm);
  const double e2 = norm * (-2.0 * zp / p.c * gp + 2.0 * zm / p.c * gm);

  const double kp = p.k * pi;
  const double s = std::sin(kp * v);
  const double c = std::cos(kp * v);

  FzValue out;
  out.f = std::cos(pi * u) + amp * e0 * s;
  out.df = -pi * std::sin(pi * u) + amp * (e1 * s + e0 * kp * c);
  out.d2f = -pi * pi * std::cos(pi * u) + amp * (e2 * s + 2.0 * e1 * kp * c - e0 * kp * kp * s);
  return out;
}

FzSample fz(const PulseParams& pulse, double t, double t_i) {
  if (!(pulse.t_pi > 0.0)) throw InvalidArgument("fz: t_pi must be positive");
  const double u = (t - t_i) / pulse.t_pi;
  if (u < -1e-12 || u > 1.0 + 1e-12) throw InvalidArgument("fz: t outside the pulse");
  FzSample s;
  s.value = fz_ansatz(pulse, std::clamp(u, 0.0, 1.0)).f;
  s.in_range = std::abs(s.value) <= 1.0 + 1e-9;
  return s;
}

PulseProfile::PulseProfile(const PulseParams& pulse) : p_(pulse) {
  if (!(p_.t_pi > 0.0)) throw InvalidArgument("pulse: t_pi must be positive");
  if (p_.t_ramp < 0.0 || p_.t_ramp >= p_.t_pi / 2.0)
    throw InvalidArgument("pulse: t_ramp must lie in [0, t_pi/2)");
  const double curv = -fz_ansatz(p_, 0.0).d2f;
  if (!(curv > 0.0)) throw NumericalError("pulse: f_z has no quadratic turning point at the edge");
  edge_ = std::sqrt(curv);

  scale_ = 1.0;
  const double raw_area = area();
  const double s = pi / raw_area;
  if (std::abs(s - 1.0) > 0.2)
    throw NumericalError("pulse: area renormalisation outside [-0.2, 0.2]");
  scale_ = s;
  p_.delta_omega_pi = scale_ - 1.0;

  const int n = 20001;
  auto neg = [this](double u) { return -omega_unit(u); };
  double best_u = 0.0;
  double best = -1e300;
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / (n - 1);
    const double w = omega_unit(u);
    if (w > best) {
      best = w;
      best_u = u;
    }
  }
  const double h = 1.0 / (n - 1);
  const double lo = std::max(0.0, best_u - h);
  const double hi = std::min(1.0, best_u + h);
  auto r = boost::math::tools::brent_find_minima(neg, lo, hi, 40);
  omega_pp_ = std::max(best, -r.second) / p_.t_pi;
}

double PulseProfile::omega_raw_unit(double u) const {
  const double ue = edge_zone;
  if (u < ue || u > 1.0 - ue) return edge_;
  const FzValue v = fz_ansatz(p_, u);
  const double den = 1.0 - v.f * v.f;
  if (!(den > 0.0)) throw NumericalError("pulse: |f_z| reaches 1 inside the pulse");
  return -v.df / std::sqrt(den);
}

double PulseProfile::base_unit(double u) const {
  const double ur = p_.t_ramp / p_.t_pi;
  if (ur > 0.0) {
    if (u <= ur) {
      const double s = std::sin(pi * u / (2.0 * ur));
      return edge_ * s * s;
    }
    if (u >= 1.0 - ur) {
      const double s = std::sin(pi * (u - 1.0) / (2.0 * ur));
      return edge_ * s * s;
    }
  }
  return omega_raw_unit(u);
}

double PulseProfile::omega_unit(double u) const {
  if (u < 0.0 || u > 1.0) return 0.0;
  return scale_ * base_unit(u);
}

double PulseProfile::omega(double t) const { return omega_unit(t / p_.t_pi) / p_.t_pi; }

std::vector<double> PulseProfile::breakpoints() const {
  const double ur = p_.t_ramp / p_.t_pi;
  std::vector<double> pts{0.0,         edge_zone, 0.5 - p_.b, 0.5, 0.5 + p_.b,
                          1.0 - edge_zone, 1.0};
  if (ur > 0.0) {
    pts.push_back(ur);
    pts.push_back(1.0 - ur);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double PulseProfile::area() const {
  const auto pts = breakpoints();
  auto f = [this](double u) { return omega_unit(u); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, pts[i], pts[i + 1],
                                                                           12, 1e-12);
  return total;
}

double PulseProfile::omega_pp() const { return omega_pp_; }

ValidityReport validate_pulse(const PulseParams& p) {
  ValidityReport rep;
  auto fail = [&rep](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };

  if (p.k < 1 || p.k % 2 == 0) fail("k must be an odd positive integer");
  if (!(p.b > 0.0 && p.b < 0.5)) fail("b must satisfy 0 < b < 0.5");
  if (!(p.c > 0.0 && p.c < 0.1)) fail("c must be small and positive (c << 1)");
  if (!(p.t_pi > 0.0)) fail("t_pi must be positive");
  if (p.t_ramp < 0.0 || (p.t_pi > 0.0 && p.t_ramp >= p.t_pi / 2.0))
    fail("t_ramp must lie in [0, t_pi/2)");
  if (p.tau > 0.0 && std::abs(p.tau - 2.0 * p.t_pi) > 1e-12 * p.tau)
    fail("tau must equal 2 t_pi");

  try {
    const auto& row = table_row(p.k);
    if (std::abs(p.d) > std::abs(row.d_max) * (1.0 + 1e-12))
      fail("|d| exceeds d_max for this harmonic");
  } catch (const InvalidArgument&) {
    fail("k outside the envelope table");
  }
  if (!rep.ok && (p.k < 1 || p.c <= 0.0 || p.b <= 0.0)) return rep;

  // erf plateau must have decayed at the pulse edge
  const double amp = std::abs(p.d / (pi * p.k * p.b));
  const double plateau_edge = std::erf((p.b - 0.5) / p.c) - std::erf((-0.5 - p.b) / p.c);
  rep.edge_tail = amp * std::abs(plateau_edge);
  if (rep.edge_tail > 1e-3) fail("1/2 - b >> c violated: envelope tail at the pulse edge");

  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / (n - 1);
    rep.max_abs_fz = std::max(rep.max_abs_fz, std::abs(fz_ansatz(p, u).f));
  }
  if (rep.max_abs_fz > 1.0 + 1e-9) fail("|f_z| > 1 on the validation grid");
  return rep;
}

void write_pulse_waveform_csv(std::ostream& os, const PulseProfile& profile, bool axis_x,
                              int n_samples) {
  if (n_samples < 2) throw InvalidArgument("waveform needs at least 2 samples");
  const auto& p = profile.params();
  os << "t_s,fz,omega_x_rad_s,omega_y_rad_s\n";
  os << std::setprecision(17);
  for (int i = 0; i < n_samples; ++i) {
    const double u = static_cast<double>(i) / (n_samples - 1);
    const double t = u * p.t_pi;
    const double w = profile.omega(t);
    os << t << ',' << fz_ansatz(p, u).f << ',' << (axis_x ? w : 0.0) << ','
       << (axis_x ? 0.0 : w) << '\n';
  }
}

}  // namespace tqxy
