#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tqxy {

using cplx = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;
using Matrix4c = Eigen::Matrix4cd;
using Matrix2c = Eigen::Matrix2cd;
using Vector4c = Eigen::Vector4cd;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

namespace phys {
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double k_B = 1.380649e-23;          // J/K
inline constexpr double amu = 1.66053906660e-27;     // kg
inline constexpr double e_charge = 1.602176634e-19;  // C
inline constexpr double eps0 = 8.8541878128e-12;     // F/m
// electron gyromagnetic factor, (2 pi) x 2.8 MHz/G expressed per tesla
inline constexpr double gamma_e = two_pi * 2.8e10;
}  // namespace phys

inline double hz_to_rad(double f_hz) { return two_pi * f_hz; }
inline double rad_to_hz(double w) { return w / two_pi; }

// Base class for everything the library throws on bad input or failed numerics.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tqxy
