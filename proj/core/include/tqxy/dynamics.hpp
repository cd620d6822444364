#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tqxy/fourier.hpp"
#include "tqxy/gate_search.hpp"
#include "tqxy/pulse.hpp"
#include "tqxy/sequence.hpp"
#include "tqxy/trajectory.hpp"
#include "tqxy/types.hpp"

namespace tqxy {

enum class ModelVariant { Hs, Hf };

enum class T2Convention {
  Angular,  // delta_omega = sqrt(2) / T2* taken as rad/s
  Hertz     // delta_omega = 2 pi sqrt(2) / T2*
};

struct NoiseConfig {
  double delta_omega = 0.0;  // rad/s, adds +-delta_omega/2 S_z
  double delta_Omega = 0.0;  // fractional Rabi error
  double delta_nu = 0.0;     // fractional mode-frequency error
  double heating_rate = 0.0; // quanta/s
  double temperature = 300.0;
  std::optional<double> N_bar;  // overrides the Bose factor at temperature
  bool crosstalk = false;
  std::optional<double> T2_star;  // s; sets delta_omega when given
  T2Convention t2_convention = T2Convention::Angular;

  double effective_delta_omega() const;
  double reservoir_occupation(double nu) const;
  /// Gamma = ndot / N_bar.
  double gamma(double nu) const;
};

double bose_occupation(double nu, double temperature);

struct HamiltonianModel {
  ModelVariant variant = ModelVariant::Hs;
  int n_a = 16;
  int n_b = 12;
  bool effective_second_mode = true;  // r S_z^2 term in H_s
};

/// Two-qubit basis index q = 2 s1 + s2 with s = 0 for sigma_z = +1.
inline constexpr std::array<double, 4> kSz{2.0, 0.0, 0.0, -2.0};       // S_z
inline constexpr std::array<double, 4> kSzMinus{0.0, -2.0, 2.0, 0.0};  // sigma1^z - sigma2^z

/// H(t) = H_mode(S_z) + H_drive(t).  The mode part is block diagonal in the
/// qubit computational basis; the drive part acts on the qubits only.
class GateHamiltonian {
 public:
  GateHamiltonian(const HamiltonianModel& model, const SequencePlan& plan, const SystemParams& sys,
                  const NoiseConfig& noise);

  const HamiltonianModel& model() const { return model_; }
  const SequencePlan& plan() const { return plan_; }
  const SystemParams& system() const { return sys_; }
  const NoiseConfig& noise() const { return noise_; }

  int mode_dim() const;
  int dim() const { return 4 * mode_dim(); }
  double r() const { return r_; }
  double delta_omega() const { return delta_omega_; }

  /// Mode Hamiltonian for qubit sector q (n_a x n_a, or n_a n_b for H_f).
  MatrixXc mode_block(int q) const;
  /// For H_f the sector block splits as kron(A_q, I) + kron(I, B_q).
  MatrixXc mode_block_a(int q) const;
  MatrixXc mode_block_b(int q) const;

  /// Rabi frequency of the active pulse at t (rad/s), with delta_Omega applied.
  double rabi(double t) const;
  /// The two single-qubit drive generators at t; H_drive = h1 (x) I + I (x) h2.
  std::pair<Matrix2c, Matrix2c> drive_terms(double t) const;
  /// Same for pulse record i with a given Rabi frequency omega at time t.
  std::pair<Matrix2c, Matrix2c> drive_terms_for(std::size_t pulse_index, double omega, double t) const;
  Matrix4c drive(double t) const;
  MatrixXc dense(double t) const;

  /// Profile for pulse record i.
  const PulseProfile& profile(std::size_t pulse_index) const;
  /// Largest frequency the step rule has to resolve.
  double fastest_frequency() const;

 private:
  HamiltonianModel model_;
  SequencePlan plan_;
  SystemParams sys_;
  NoiseConfig noise_;
  double r_ = 0.0;
  double delta_omega_ = 0.0;
  std::vector<std::shared_ptr<PulseProfile>> block_profiles_;
};

struct NumericsConfig {
  int dt_divisor = 50;        // steps per fastest period
  int steps_per_pulse = 0;    // 0: from the dt rule
  double nbar = 1.0;          // initial thermal occupation, both modes
  bool audit = false;         // rerun with half the step
  double audit_tol = 1e-7;
  double norm_tol = 1e-8;
};

/// Ensemble of pure states: column c of block q holds the sector-q amplitudes
/// of member c, which carries weight weights[c].
struct QuantumState {
  int mode_dim = 0;
  std::array<MatrixXc, 4> blocks;
  std::vector<double> weights;

  Matrix4c reduced_qubits() const;
  double max_norm_error() const;
};

/// |q0> (x) thermal mode state(s), truncated and renormalised.
QuantumState thermal_product_state(const Vector4c& q0, const std::vector<int>& mode_dims,
                                   double nbar);

/// Full density matrix in qubit-major ordering.
struct DensityState {
  int mode_dim = 0;
  MatrixXc rho;

  Matrix4c reduced_qubits() const;
};

DensityState thermal_density(const Vector4c& q0, int n_a, double nbar);

Vector4c initial_qubits(BellTarget target);
Vector4c bell_target_vector(BellTarget target);

/// |<Phi|sigma|Phi>| / sqrt(Tr sigma^2).
double bell_fidelity(const Matrix4c& sigma, BellTarget target);
/// Same on a full state (modes traced out).
double bell_fidelity(const QuantumState& s, BellTarget target);
double bell_fidelity(const DensityState& s, BellTarget target);

struct PropagationResult {
  Matrix4c sigma;
  double fidelity = 0.0;
  double infidelity = 0.0;
  int steps_per_pulse = 0;
  std::size_t total_steps = 0;
  double norm_error = 0.0;
  double trace_error = 0.0;
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  std::optional<double> audit_delta;
  bool audit_passed = true;
};

int steps_for_pulse(const GateHamiltonian& H, double t_pi, const NumericsConfig& num);

/// Fourth-order split propagation of the ensemble from psi0 over the plan.
PropagationResult propagate_unitary(const GateHamiltonian& H, const QuantumState& psi0,
                                    const NumericsConfig& num,
                                    BellTarget target = BellTarget::PhiPlusTilde,
                                    QuantumState* final_state = nullptr);

/// Convenience: thermal |+x +y> initial state, n-bar from num.
PropagationResult simulate_gate(const GateHamiltonian& H, const NumericsConfig& num,
                                BellTarget target = BellTarget::PhiPlusTilde);

/// Heating master equation, single mode only.
PropagationResult propagate_lindblad(const GateHamiltonian& H, const DensityState& rho0,
                                     const NumericsConfig& num,
                                     BellTarget target = BellTarget::PhiPlusTilde,
                                     DensityState* final_state = nullptr);

/// Operators of the second-order stroboscopic XYXY Hamiltonian on qubits (x)
/// mode (dim 4 n_a).  If literal is set the coefficients enter exactly as
/// written in the supplementary derivation; otherwise the transverse couplings
/// take the values found by direct propagation (-2 J_perp and B'/2 offset).
MatrixXc xyxy_second_order_hamiltonian(const SecondOrderCoeffs& c, double eta, double nu, int n_a,
                                       bool literal, bool include_parallel);

}  // namespace tqxy
