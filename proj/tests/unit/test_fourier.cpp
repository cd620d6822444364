#include <cmath>

#include "doctest.h"
#include "oracles/derived_values.hpp"
#include <tqxy/types.hpp>
#include <tqxy/fourier.hpp>
#include <tqxy/pulse_params.hpp>

using namespace tqxy;
using doctest::Approx;

TEST_CASE("instantaneous coefficients") {
  CHECK(f_instantaneous(1) == Approx(4.0 / pi).epsilon(1e-15));
  CHECK(f_instantaneous(2) == 0.0);
  CHECK(f_instantaneous(3) == Approx(oracle::f3_instantaneous).epsilon(1e-14));
  CHECK(f_instantaneous(3) == Approx(-0.42441).epsilon(1e-5));
  CHECK_THROWS_AS(f_instantaneous(0), InvalidArgument);
}

TEST_CASE("top-hat coefficients") {
  const double tau = 1.0;
  SUBCASE("instantaneous limit, monotone") {
    double prev = 1.0;
    for (double r : {1e-2, 1e-3, 1e-4}) {
      const double err = std::abs(f_tophat(1, r * tau, tau) - 4.0 / pi);
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev < 1e-7);
  }
  SUBCASE("removable point t_pi = tau / 2") {
    CHECK(f_tophat(1, 0.5, tau) == Approx(oracle::f1_tophat_half).epsilon(1e-12));
    CHECK(f_tophat(1, 0.5 * (1.0 - 1e-10), tau) == Approx(1.0).epsilon(1e-8));
  }
  CHECK(f_tophat(3, 0.25, tau) == Approx(oracle::f3_tophat_quarter).epsilon(1e-10));
  CHECK(f_tophat(2, 0.3, tau) == 0.0);
  CHECK_THROWS_AS(f_tophat(1, 0.6, tau), InvalidArgument);
}

TEST_CASE("modulated coefficients") {
  PulseParams g1 = make_pulse(9, 1.915, 20.51e-6);
  CHECK(f_modulated(9, g1) == Approx(-4.0 * 1.915 / (9.0 * pi)).epsilon(1e-14));
  CHECK(f_modulated(9, g1) == Approx(oracle::f9_G1).epsilon(1e-9));
  CHECK(f_modulated(1, g1) == Approx(oracle::f1_G1).epsilon(1e-9));
  CHECK(f_modulated(7, g1) == Approx(oracle::f7_G1).epsilon(1e-9));
  CHECK(f_modulated(4, g1) == 0.0);

  PulseParams g4 = make_pulse(5, -0.321, 11.5e-6);
  CHECK(f_modulated(5, g4) == Approx(0.08174).epsilon(1e-4));
  CHECK(f_modulated(5, g4) == Approx(oracle::f5_G4).epsilon(1e-9));

  PulseParams flat = make_pulse(9, 0.0, 20e-6);
  CHECK(f_modulated(9, flat) == 0.0);
}

TEST_CASE("closed form against quadrature of the period") {
  for (const auto& row : appendix_a_table()) {
    const PulseParams p = make_pulse(row.k, row.d_max, 1.0);
    auto fz = [&](double x) { return modulated_fz_period(p, x); };
    const std::vector<double> pts{0.25 - p.b / 2, 0.25 + p.b / 2, 0.5, 0.75 - p.b / 2, 0.75 + p.b / 2};
    for (int n = 1; n <= 2 * row.k; n += 2) {
      const double q = fourier_coefficient_quadrature(fz, n, pts);
      // erf tails beyond the pulse edges leave ~1e-10 that the closed form drops
      CHECK(std::abs(f_modulated_exact(n, p) - q) < 1e-8 * std::abs(q) + 1e-9);
    }
  }
}

TEST_CASE("dispersive couplings") {
  FourierSpectrum single;
  single.k = 5;
  single.n_max = 10;
  single.f.assign(11, 0.0);
  single.f[5] = 0.3;
  CHECK(dispersive_J(single) == Approx(0.09 / 4.0));
  CHECK(second_mode_J(single).j_b == Approx(1.5 * 0.09));
  CHECK(second_mode_J(single).r == Approx(1.5));

  CHECK(dispersive_J(instantaneous_spectrum(1, 2)) == Approx(oracle::J_inst_k1).epsilon(1e-14));
  CHECK(dispersive_J(instantaneous_spectrum(1, 2)) == Approx(0.405).epsilon(1e-3));

  const auto s9 = instantaneous_spectrum(9);
  CHECK(s9.n_max == 18);
  CHECK(second_mode_J(s9).j_b == Approx(oracle::Jb_inst_k9).epsilon(1e-13));
  CHECK(second_mode_J(s9).r == Approx(oracle::r_inst_k9).epsilon(1e-13));

  CHECK(dispersive_J(instantaneous_spectrum(51, 102)) == Approx(2.0).epsilon(0.05));

  FourierSpectrum empty = single;
  empty.f.assign(11, 0.0);
  CHECK_THROWS_AS(second_mode_J(empty), InvalidArgument);
}

TEST_CASE("truncation at 2k to 1e-3" * doctest::should_fail()) {
  for (int k = 1; k <= 15; k += 2) {
    const double j2 = dispersive_J(instantaneous_spectrum(k, 2 * k));
    const double j4 = dispersive_J(instantaneous_spectrum(k, 4 * k));
    CHECK(std::abs(j2 - j4) < 1e-3 * std::abs(j4));
  }
}

TEST_CASE("truncation tail of the instantaneous J") {
  // the odd tail beyond 2k behaves like -16 k^2 / (pi^2 n^4)
  for (int k = 1; k <= 15; k += 2) {
    const double j2 = dispersive_J(instantaneous_spectrum(k, 2 * k));
    const double j4 = dispersive_J(instantaneous_spectrum(k, 4 * k));
    double tail = 0.0;
    for (int n = 2 * k + 1; n <= 4 * k; n += 2) tail -= 16.0 * k * k / (pi * pi * std::pow(n, 4));
    CHECK((j4 - j2) == Approx(tail).epsilon(0.3));
    CHECK(std::abs(j2 - j4) < 0.1 * std::abs(j4));
  }
}

TEST_CASE("second-order coefficients") {
  const double nu = two_pi * 220e3;
  const double tau = 2.3011363636363639e-05;
  PulseParams g4 = make_pulse(5, -0.321124072331677, tau / 2);
  const auto c = second_order_coeffs(g4, two_pi / tau, nu);
  CHECK(c.j_xy == 0.0);
  CHECK(c.j_perp == Approx(oracle::G4_j_perp).epsilon(1e-8));
  CHECK(c.b_prime == Approx(oracle::G4_b_prime).epsilon(1e-6));
  CHECK(c.b_dprime == Approx(oracle::G4_b_dprime).epsilon(1e-8));
  for (std::size_t n = 2; n < c.e.size(); n += 2) CHECK(c.e[n] == 0.0);

  PulseParams inst = g4;
  inst.t_pi = 0.0;
  const auto z = second_order_coeffs(inst, two_pi / tau, nu);
  CHECK(z.j_perp == 0.0);
  CHECK(z.b_prime == 0.0);
  CHECK(z.b_dprime == 0.0);
}
