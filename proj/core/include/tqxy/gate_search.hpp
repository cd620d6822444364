#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tqxy/fourier.hpp"
#include "tqxy/pulse_params.hpp"
#include "tqxy/types.hpp"

namespace tqxy {

struct IonPhysicalParams {
  double gamma_e = phys::gamma_e;  // rad/s per tesla
  double g_B = 0.0;                // T/m
  double mass = 0.0;               // kg
};

struct SystemParams {
  double nu = 0.0;   // rad/s
  double eta = 0.0;
  bool two_mode = true;
  double delta_omega_qubits = 0.0;  // rad/s, crosstalk splitting
  std::optional<IonPhysicalParams> physical;
};

double eta_from_physical(const IonPhysicalParams& ion, double nu);
double ion_separation(double mass, double nu);
double qubit_splitting(const IonPhysicalParams& ion, double nu);

/// Throws InvalidArgument on nu <= 0, eta <= 0, eta >= 0.1, or when the
/// physical parameters disagree with eta by more than 1 %.
void validate_system(const SystemParams& s);

struct GateCandidate {
  int k = 0;
  int N = 0;
  double d = 0.0;
  double xi = 0.0;   // rad/s
  double t_g = 0.0;  // s
  double tau = 0.0;  // s
  double t_pi = 0.0;
  double omega_pp = 0.0;  // rad/s
  double speed_ratio = 0.0;
  double f_k = 0.0;
  double J_used = 0.0;         // coupling entering the detuning equation
  double J_uncorrected = 0.0;  // single-mode J_k
  double J_corrected = 0.0;    // J_k - J_k^b / 3
};

/// xi = 2 eta nu { sqrt(f_k^2 + 4 eta^2 J^2) + 2 eta J }.  Throws on J <= 0.
double detuning_xi(double eta, double nu, double f_k, double J_k);

double dispersive_gate_time(double eta, double nu);

/// Instantaneous-pulse k = 1 gate time pi^2 / (4 eta nu).
double k1_gate_time(double eta, double nu);

/// Detuning for the modulated ansatz at amplitude d, resonant harmonic k.
struct DetuningEval {
  double xi = 0.0;
  double f_k = 0.0;
  double J = 0.0;
  double J_single = 0.0;
  double J_corrected = 0.0;
  bool valid = false;
};
DetuningEval detuning_for_d(int k, double d, const SystemParams& sys);

/// Gate candidate at an exact amplitude d (without solving for N).
GateCandidate candidate_at(int k, int N, double d, const SystemParams& sys);

struct EnumerateOptions {
  std::pair<double, double> d_range{0.0, 0.0};  // empty range => default [0, d_max]
  int grid = 400;
  int n_max_fourier = 0;
  bool compute_omega_pp = true;
};

std::vector<GateCandidate> enumerate_gates(int k, const SystemParams& sys,
                                           const EnumerateOptions& opts = {});

/// Root of (nu - xi(d)) / (8 k xi(d)) = N inside [d_lo, d_hi]; nullopt if absent.
std::optional<double> solve_d_for_N(int k, int N, const SystemParams& sys, double d_lo,
                                    double d_hi);

}  // namespace tqxy
