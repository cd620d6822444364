#include "tqxy/gate_search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "tqxy/pulse.hpp"

namespace tqxy {

double eta_from_physical(const IonPhysicalParams& ion, double nu) {
  if (!(ion.mass > 0.0) || !(nu > 0.0)) throw InvalidArgument("ion mass and nu must be positive");
  return ion.gamma_e * ion.g_B / (8.0 * nu) * std::sqrt(phys::hbar / (ion.mass * nu));
}

double ion_separation(double mass, double nu) {
  return std::cbrt(phys::e_charge * phys::e_charge / (2.0 * pi * phys::eps0 * mass * nu * nu));
}

double qubit_splitting(const IonPhysicalParams& ion, double nu) {
  return ion.gamma_e * ion.g_B * ion_separation(ion.mass, nu);
}

void validate_system(const SystemParams& s) {
  if (!(s.nu > 0.0)) throw InvalidArgument("system: nu must be positive");
  if (!(s.eta > 0.0) || s.eta >= 0.1) throw InvalidArgument("system: eta must satisfy 0 < eta << 1");
  if (s.physical) {
    const double eta_phys = eta_from_physical(*s.physical, s.nu);
    if (std::abs(eta_phys - s.eta) > 0.01 * s.eta)
      throw InvalidArgument("system: eta inconsistent with gradient inputs (derived " +
                            std::to_string(eta_phys) + ")");
  }
}

double detuning_xi(double eta, double nu, double f_k, double J_k) {
  if (!(J_k > 0.0)) throw InvalidArgument("detuning_xi: J_k <= 0 is outside the supported branch");
  return 2.0 * eta * nu * (std::sqrt(f_k * f_k + 4.0 * eta * eta * J_k * J_k) + 2.0 * eta * J_k);
}

double dispersive_gate_time(double eta, double nu) {
  if (!(eta > 0.0) || !(nu > 0.0)) throw InvalidArgument("eta and nu must be positive");
  return pi / (8.0 * eta * eta * nu);
}

double k1_gate_time(double eta, double nu) {
  if (!(eta > 0.0) || !(nu > 0.0)) throw InvalidArgument("eta and nu must be positive");
  return pi * pi / (4.0 * eta * nu);
}

DetuningEval detuning_for_d(int k, double d, const SystemParams& sys) {
  PulseParams p = make_pulse(k, d, 1.0);
  const auto spec = modulated_spectrum(p);
  DetuningEval ev;
  ev.f_k = spec(k);
  ev.J_single = dispersive_J(spec);
  ev.J_corrected = ev.J_single - second_mode_J(spec).j_b / 3.0;
  ev.J = sys.two_mode ? ev.J_corrected : ev.J_single;
  if (ev.J > 0.0) {
    ev.xi = detuning_xi(sys.eta, sys.nu, ev.f_k, ev.J);
    ev.valid = true;
  }
  return ev;
}

namespace {

double block_count(int k, double d, const SystemParams& sys) {
  const auto ev = detuning_for_d(k, d, sys);
  if (!ev.valid) return std::nan("");
  return (sys.nu - ev.xi) / (8.0 * k * ev.xi);
}

}  // namespace

GateCandidate candidate_at(int k, int N, double d, const SystemParams& sys) {
  const auto ev = detuning_for_d(k, d, sys);
  if (!ev.valid) throw InvalidArgument("candidate_at: J_k <= 0 at this amplitude");
  GateCandidate g;
  g.k = k;
  g.N = N;
  g.d = d;
  g.f_k = ev.f_k;
  g.J_used = ev.J;
  g.J_uncorrected = ev.J_single;
  g.J_corrected = ev.J_corrected;
  // ξ from the integer condition keeps t_g = 8 N τ exact
  g.xi = sys.nu / (1.0 + 8.0 * k * N);
  g.tau = two_pi * k / (sys.nu - g.xi);
  g.t_pi = g.tau / 2.0;
  g.t_g = 8.0 * N * g.tau;
  g.speed_ratio = g.t_g / dispersive_gate_time(sys.eta, sys.nu);
  return g;
}

std::optional<double> solve_d_for_N(int k, int N, const SystemParams& sys, double d_lo,
                                    double d_hi) {
  auto g = [&](double d) { return block_count(k, d, sys) - N; };
  double glo = g(d_lo);
  double ghi = g(d_hi);
  if (!std::isfinite(glo) || !std::isfinite(ghi) || glo * ghi > 0.0) return std::nullopt;
  if (glo == 0.0) return d_lo;
  if (ghi == 0.0) return d_hi;
  std::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(50);
  auto r = boost::math::tools::toms748_solve(g, d_lo, d_hi, glo, ghi, tol, iters);
  return 0.5 * (r.first + r.second);
}

std::vector<GateCandidate> enumerate_gates(int k, const SystemParams& sys,
                                           const EnumerateOptions& opts) {
  if (k < 1 || k % 2 == 0) throw InvalidArgument("enumerate_gates: k must be odd (f_k = 0 otherwise)");
  validate_system(sys);
  const auto& row = table_row(k);
  double lo = opts.d_range.first;
  double hi = opts.d_range.second;
  if (lo == hi && lo == 0.0) {
    lo = std::min(0.0, row.d_max);
    hi = std::max(0.0, row.d_max);
  }
  if (lo > hi) std::swap(lo, hi);
  const double dm = std::abs(row.d_max);
  if (lo < -dm * (1.0 + 1e-12) || hi > dm * (1.0 + 1e-12))
    throw InvalidArgument("enumerate_gates: d_range exceeds +-d_max");

  std::vector<GateCandidate> out;
  if (!(hi > lo)) return out;

  const int n = std::max(opts.grid, 2);
  std::vector<double> ds(n + 1);
  std::vector<double> Ns(n + 1);
  for (int i = 0; i <= n; ++i) {
    ds[i] = lo + (hi - lo) * i / n;
    Ns[i] = block_count(k, ds[i], sys);
  }
  for (int i = 0; i < n; ++i) {
    const double a = Ns[i];
    const double b = Ns[i + 1];
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    const double nlo = std::min(a, b);
    const double nhi = std::max(a, b);
    for (int N = std::max(1, static_cast<int>(std::ceil(nlo))); N <= nhi; ++N) {
      if (N == nhi && i + 1 < n) continue;  // counted in the next cell
      auto d = solve_d_for_N(k, N, sys, ds[i], ds[i + 1]);
      if (!d) continue;
      GateCandidate g = candidate_at(k, N, *d, sys);
      if (opts.compute_omega_pp) {
        PulseParams p = make_pulse(k, *d, g.t_pi);
        g.omega_pp = PulseProfile(p).omega_pp();
      }
      out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end(), [](const GateCandidate& x, const GateCandidate& y) {
    return x.N != y.N ? x.N < y.N : x.d < y.d;
  });
  return out;
}

}  // namespace tqxy
