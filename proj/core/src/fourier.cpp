#include "tqxy/fourier.hpp"

#include <algorithm>
#include <sstream>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tqxy/pulse.hpp"
#include "tqxy/types.hpp"

namespace tqxy {

namespace {

bool is_even(int n) { return n % 2 == 0; }

int resolve_n_max(int k, int n_max) {
  if (n_max <= 0) return 2 * k;
  return n_max;
}

// Gaussian-softened sinc term of the modulated closed form.
double envelope_term(int m, double b, double c) {
  if (m == 0) return b;
  const double mp = m * pi;
  return std::exp(-(mp * c) * (mp * c) / 4.0) * std::sin(mp * b) / mp;
}

double modulated_closed(int n, const PulseParams& p) {
  if (n < 1) throw InvalidArgument("harmonic index must be >= 1");
  if (is_even(n)) return 0.0;
  const double s = std::sin(pi * p.k / 2.0);
  const double bracket = envelope_term(p.k - n, p.b, p.c) - envelope_term(p.k + n, p.b, p.c);
  const double pref = 4.0 * p.d * s / (pi * p.k * p.b);
  if (n == 1) return 1.0 - pref * bracket;
  return -pref * std::sin(n * pi / 2.0) * bracket;
}

}  // namespace

double FourierSpectrum::operator()(int n) const {
  if (n < 1 || n > n_max) return 0.0;
  return f[static_cast<std::size_t>(n)];
}

double FourierSpectrum::sum_squares() const {
  double acc = 0.0;
  for (int n = 1; n <= n_max; ++n) acc += f[n] * f[n];
  return acc;
}

double FourierSpectrum::max_abs() const {
  double m = 0.0;
  for (int n = 1; n <= n_max; ++n) m = std::max(m, std::abs(f[n]));
  return m;
}

double f_instantaneous(int n) {
  if (n < 1) throw InvalidArgument("harmonic index must be >= 1");
  if (is_even(n)) return 0.0;
  return 4.0 / (n * pi) * std::sin(n * pi / 2.0);
}

double f_tophat(int n, double t_pi, double tau) {
  if (n < 1) throw InvalidArgument("harmonic index must be >= 1");
  if (!(tau > 0.0) || !(t_pi > 0.0)) throw InvalidArgument("t_pi and tau must be positive");
  if (t_pi > tau / 2.0 * (1.0 + 1e-12)) throw InvalidArgument("t_pi > tau/2: pulses overlap");
  if (is_even(n)) return 0.0;
  const double x = t_pi / tau;
  const double denom = 1.0 - 4.0 * n * n * x * x;
  const double sn = std::sin(n * pi / 2.0);
  if (std::abs(denom) < 1e-8) {
    // 2 n t_pi = tau: cos and denominator vanish together
    return sn / n;
  }
  return 4.0 * sn * std::cos(n * pi * x) / (n * pi * denom);
}

double f_modulated(int n, const PulseParams& pulse) {
  if (n == pulse.k) return -4.0 * pulse.d / (pi * pulse.k);
  return modulated_closed(n, pulse);
}

double f_modulated_exact(int n, const PulseParams& pulse) { return modulated_closed(n, pulse); }

FourierSpectrum instantaneous_spectrum(int k, int n_max) {
  FourierSpectrum s;
  s.k = k;
  s.n_max = resolve_n_max(k, n_max);
  s.f.assign(s.n_max + 1, 0.0);
  for (int n = 1; n <= s.n_max; ++n) s.f[n] = f_instantaneous(n);
  return s;
}

FourierSpectrum tophat_spectrum(int k, double t_pi, double tau, int n_max) {
  FourierSpectrum s;
  s.k = k;
  s.n_max = resolve_n_max(k, n_max);
  s.f.assign(s.n_max + 1, 0.0);
  for (int n = 1; n <= s.n_max; ++n) s.f[n] = f_tophat(n, t_pi, tau);
  return s;
}

FourierSpectrum modulated_spectrum(const PulseParams& pulse, int n_max, bool exact) {
  FourierSpectrum s;
  s.k = pulse.k;
  s.n_max = resolve_n_max(pulse.k, n_max);
  s.f.assign(s.n_max + 1, 0.0);
  for (int n = 1; n <= s.n_max; ++n)
    s.f[n] = exact ? f_modulated_exact(n, pulse) : f_modulated(n, pulse);
  return s;
}

FourierSpectrum sampled_spectrum(const std::vector<double>& samples, int k, int n_max) {
  if (samples.size() < 4) throw InvalidArgument("sampled spectrum needs at least 4 samples");
  FourierSpectrum s;
  s.k = k;
  s.n_max = resolve_n_max(k, n_max);
  s.f.assign(s.n_max + 1, 0.0);
  const double m = static_cast<double>(samples.size());
  for (int n = 1; n <= s.n_max; ++n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j)
      acc += samples[j] * std::cos(two_pi * n * static_cast<double>(j) / m);
    s.f[n] = 2.0 * acc / m;
  }
  return s;
}

double fourier_coefficient_quadrature(const std::function<double(double)>& f_of_x, int n,
                                      const std::vector<double>& breakpoints, double abs_tol) {
  std::vector<double> pts{0.0, 1.0};
  for (double b : breakpoints)
    if (b > 0.0 && b < 1.0) pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto integrand = [&](double x) { return f_of_x(x) * std::cos(two_pi * n * x); };
  double total = 0.0;
  double err_total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, pts[i], pts[i + 1], 12, 1e-13, &err);
    err_total += err;
  }
  if (err_total > abs_tol) {
    std::ostringstream msg;
    msg << "Fourier quadrature did not reach tolerance (err=" << std::scientific << err_total << ")";
    throw NumericalError(msg.str());
  }
  return 2.0 * total;
}

double modulated_fz_period(const PulseParams& pulse, double x) {
  x -= std::floor(x);
  if (x < 0.5) return fz_ansatz(pulse, 2.0 * x).f;
  return -fz_ansatz(pulse, 2.0 * x - 1.0).f;
}

double dispersive_J(const FourierSpectrum& s) {
  const double kk = static_cast<double>(s.k) * s.k;
  double j = 0.0;
  for (int n = 1; n <= s.n_max; ++n) {
    const double fn = s.f[n];
    if (fn == 0.0) continue;
    if (n == s.k)
      j += fn * fn / 4.0;
    else
      j += fn * fn / (1.0 - n * n / kk);
  }
  return j;
}

SecondModeCoupling second_mode_J(const FourierSpectrum& s) {
  const double kk3 = 3.0 * s.k * s.k;
  SecondModeCoupling out;
  for (int n = 1; n <= s.n_max; ++n) out.j_b += s.f[n] * s.f[n] / (1.0 - n * n / kk3);
  const double norm = s.sum_squares();
  if (!(norm > 0.0)) throw InvalidArgument("second_mode_J: empty spectrum, r undefined");
  out.r = out.j_b / norm;
  return out;
}

double effective_J(const FourierSpectrum& s, bool two_mode) {
  const double j = dispersive_J(s);
  if (!two_mode) return j;
  return j - second_mode_J(s).j_b / 3.0;
}

SecondOrderCoeffs second_order_coeffs(const PulseParams& pulse, double omega, double nu,
                                      int n_max) {
  if (!(omega > 0.0) || !(nu > 0.0)) throw InvalidArgument("omega and nu must be positive");
  SecondOrderCoeffs out;
  out.e.assign(n_max + 1, 0.0);
  const double tau = two_pi / omega;
  const double t_pi = pulse.t_pi;

  if (t_pi > 0.0) {
    auto fperp = [&](double u) {
      const double f = fz_ansatz(pulse, u).f;
      return std::sqrt(std::max(0.0, (1.0 - f) * (1.0 + f)));
    };
    const std::vector<double> pts{0.0, pulse.b, 0.5};
    for (int n = 1; n <= n_max; n += 2) {
      const double w = n * omega * t_pi / 2.0;
      auto g = [&](double s) { return fperp(0.5 + s) * std::cos(w * s); };
      double integral = 0.0;
      double err = 0.0;
      double mag = 0.0;
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double e = 0.0;
        double l1 = 0.0;
        integral += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            g, pts[i], pts[i + 1], 12, 1e-12, &e, &l1);
        err += e;
        mag += l1;
      }
      // sqrt(1 - f^2) carries ~1e-8 absolute rounding noise where |f| -> 1,
      // which sets the floor of the error estimate.
      if (err > 1e-7 * std::max(mag, 1e-300))
        throw NumericalError("e_n quadrature failed to converge for n=" + std::to_string(n));
      out.e[n] = (std::cos(n * pi) - 1.0) * (2.0 * t_pi / tau) * integral;
    }
  }

  const double ratio = omega / nu;
  for (int n = 1; n <= n_max; n += 2) {
    const double en2 = out.e[n] * out.e[n];
    if (en2 == 0.0) continue;
    const double den = 1.0 - n * n * ratio * ratio / 4.0;
    out.j_perp += 0.5 * en2 / den;
    const double sn = (n % 4 == 1) ? 1.0 : -1.0;
    out.b_prime += 2.0 * n * ratio * en2 / den * sn;
    out.b_dprime += en2 / den * sn;
    // cos(n pi / 2) vanishes for odd n, so j_xy stays exactly zero
  }

  const auto spec = modulated_spectrum(pulse, std::max(2 * pulse.k, 1));
  for (int n = 1; n <= spec.n_max; ++n) {
    const double fn = spec.f[n];
    if (n == pulse.k)
      out.j_par += fn * fn / 2.0;
    else
      out.j_par += fn * fn / (1.0 - n * n * ratio * ratio);
  }
  return out;
}

}  // namespace tqxy
