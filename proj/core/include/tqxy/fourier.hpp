#pragma once

#include <functional>
#include <vector>

#include "tqxy/pulse_params.hpp"

namespace tqxy {

/// Cosine-series coefficients of a block-periodic modulation function,
/// f_z(t) = sum_n f_n cos(n omega t).  Stored densely for n = 1..n_max.
struct FourierSpectrum {
  int k = 1;
  int n_max = 2;
  std::vector<double> f;  // f[n]; f[0] is unused and kept at zero

  double operator()(int n) const;
  double sum_squares() const;
  double max_abs() const;
};

double f_instantaneous(int n);

/// Top-hat (constant Rabi) pi pulses of length t_pi in a period tau.
double f_tophat(int n, double t_pi, double tau);

/// Modulated ansatz, resonant coefficient -4d/(pi k) as quoted in the text.
double f_modulated(int n, const PulseParams& pulse);

/// Same closed form but with the resonant coefficient evaluated from the
/// general expression (its n -> k limit).  Differs from f_modulated at n = k
/// by a term proportional to exp(-(k pi c)^2) sin(2 k pi b).
double f_modulated_exact(int n, const PulseParams& pulse);

FourierSpectrum instantaneous_spectrum(int k, int n_max = 0);
FourierSpectrum tophat_spectrum(int k, double t_pi, double tau, int n_max = 0);
FourierSpectrum modulated_spectrum(const PulseParams& pulse, int n_max = 0, bool exact = true);

/// Spectrum from uniform samples of f_z over one period (endpoint excluded).
FourierSpectrum sampled_spectrum(const std::vector<double>& samples, int k, int n_max = 0);

/// Oracle: f_n = 2 int_0^1 f(x) cos(2 pi n x) dx by adaptive Gauss-Kronrod,
/// where x = t / tau.  Breakpoints help the integrator around kinks.
double fourier_coefficient_quadrature(const std::function<double(double)>& f_of_x, int n,
                                      const std::vector<double>& breakpoints = {},
                                      double abs_tol = 1e-10);

/// Block-periodic f_z of the modulated ansatz as a function of x = t/tau.
double modulated_fz_period(const PulseParams& pulse, double x);

double dispersive_J(const FourierSpectrum& s);

struct SecondModeCoupling {
  double j_b = 0.0;
  double r = 0.0;
};
SecondModeCoupling second_mode_J(const FourierSpectrum& s);

/// J_k, optionally corrected by -J_k^b/3 for the second (breathing) mode.
double effective_J(const FourierSpectrum& s, bool two_mode);

struct SecondOrderCoeffs {
  double j_par = 0.0;
  double j_perp = 0.0;
  double b_prime = 0.0;
  double b_dprime = 0.0;
  double j_xy = 0.0;
  std::vector<double> e;  // e[n], n = 0..n_max, e[0] unused
};

/// Coefficients of the stroboscopic second-order Hamiltonian of an XYXY
/// block.  omega is the block angular frequency 2 pi / tau, nu the mode
/// frequency.  If instantaneous is set the transverse support vanishes.
SecondOrderCoeffs second_order_coeffs(const PulseParams& pulse, double omega, double nu,
                                      int n_max = 200);

}  // namespace tqxy
