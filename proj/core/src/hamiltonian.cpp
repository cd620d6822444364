#include <cmath>
#include <map>

#include <unsupported/Eigen/KroneckerProduct>

#include "tqxy/dynamics.hpp"

namespace tqxy {

double bose_occupation(double nu, double temperature) {
  if (!(temperature > 0.0)) throw InvalidArgument("temperature must be positive");
  return 1.0 / std::expm1(phys::hbar * nu / (phys::k_B * temperature));
}

double NoiseConfig::effective_delta_omega() const {
  if (!T2_star) return delta_omega;
  if (!(*T2_star > 0.0)) throw InvalidArgument("T2* must be positive");
  const double w = std::sqrt(2.0) / *T2_star;
  return t2_convention == T2Convention::Angular ? w : two_pi * w;
}

double NoiseConfig::reservoir_occupation(double nu) const {
  if (N_bar) return *N_bar;
  return bose_occupation(nu, temperature);
}

double NoiseConfig::gamma(double nu) const {
  const double nb = reservoir_occupation(nu);
  if (!(nb > 0.0) || !std::isfinite(nb)) throw InvalidArgument("reservoir occupation must be finite and positive");
  return heating_rate / nb;
}

namespace {

MatrixXc annihilation(int n) {
  MatrixXc a = MatrixXc::Zero(n, n);
  for (int m = 1; m < n; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
  return a;
}

MatrixXc number_op(int n) {
  MatrixXc a = MatrixXc::Zero(n, n);
  for (int m = 0; m < n; ++m) a(m, m) = static_cast<double>(m);
  return a;
}

}  // namespace

GateHamiltonian::GateHamiltonian(const HamiltonianModel& model, const SequencePlan& plan,
                                 const SystemParams& sys, const NoiseConfig& noise)
    : model_(model), plan_(plan), sys_(sys), noise_(noise) {
  validate_system(sys_);
  if (plan_.pulses.empty()) throw InvalidArgument("hamiltonian: empty plan");
  if (model_.n_a < 2 || (model_.variant == ModelVariant::Hf && model_.n_b < 2))
    throw InvalidArgument("hamiltonian: Fock truncation must be >= 2");
  if (noise_.crosstalk && !(sys_.delta_omega_qubits > 0.0))
    throw InvalidArgument("hamiltonian: crosstalk needs a positive qubit splitting");
  delta_omega_ = noise_.effective_delta_omega();
  if (model_.variant == ModelVariant::Hs && model_.effective_second_mode)
    r_ = second_mode_J(modulated_spectrum(plan_.shape)).r;

  std::map<double, std::shared_ptr<PulseProfile>> by_tpi;
  for (const auto& rec : plan_.pulses) {
    if (rec.index % 16 != 0) continue;
    auto it = by_tpi.find(rec.t_pi);
    if (it == by_tpi.end())
      it = by_tpi.emplace(rec.t_pi, std::make_shared<PulseProfile>(plan_.pulse_params(rec))).first;
    block_profiles_.push_back(it->second);
  }
}

int GateHamiltonian::mode_dim() const {
  return model_.variant == ModelVariant::Hf ? model_.n_a * model_.n_b : model_.n_a;
}

MatrixXc GateHamiltonian::mode_block_a(int q) const {
  const int n = model_.n_a;
  const double nu = sys_.nu;
  const MatrixXc a = annihilation(n);
  MatrixXc h = nu * (1.0 + noise_.delta_nu) * number_op(n) +
               sys_.eta * nu * kSz[q] * (a + a.adjoint());
  double shift = 0.5 * delta_omega_ * kSz[q];
  if (model_.variant == ModelVariant::Hs) shift += nu * sys_.eta * sys_.eta * r_ * kSz[q] * kSz[q] / 3.0;
  h.diagonal().array() += shift;
  return h;
}

MatrixXc GateHamiltonian::mode_block_b(int q) const {
  if (model_.variant != ModelVariant::Hf) throw InvalidArgument("mode_block_b: single-mode model");
  const int n = model_.n_b;
  const double nu = sys_.nu;
  const MatrixXc b = annihilation(n);
  return std::sqrt(3.0) * nu * (1.0 + noise_.delta_nu) * number_op(n) -
         std::pow(3.0, -0.25) * sys_.eta * nu * kSzMinus[q] * (b + b.adjoint());
}

MatrixXc GateHamiltonian::mode_block(int q) const {
  if (model_.variant == ModelVariant::Hs) return mode_block_a(q);
  const MatrixXc Ia = MatrixXc::Identity(model_.n_a, model_.n_a);
  const MatrixXc Ib = MatrixXc::Identity(model_.n_b, model_.n_b);
  return MatrixXc(Eigen::kroneckerProduct(mode_block_a(q), Ib)) +
         MatrixXc(Eigen::kroneckerProduct(Ia, mode_block_b(q)));
}

const PulseProfile& GateHamiltonian::profile(std::size_t pulse_index) const {
  return *block_profiles_.at(static_cast<std::size_t>(plan_.pulses.at(pulse_index).block));
}

double GateHamiltonian::rabi(double t) const {
  if (t < 0.0 || t > plan_.total_duration) return 0.0;
  const std::size_t i = plan_.pulse_at(t);
  const auto& rec = plan_.pulses[i];
  return profile(i).omega(t - rec.t_start) * (1.0 + noise_.delta_Omega);
}

std::pair<Matrix2c, Matrix2c> GateHamiltonian::drive_terms(double t) const {
  if (t < 0.0 || t > plan_.total_duration) return {Matrix2c::Zero(), Matrix2c::Zero()};
  const std::size_t i = plan_.pulse_at(t);
  const auto& rec = plan_.pulses[i];
  return drive_terms_for(i, profile(i).omega(t - rec.t_start) * (1.0 + noise_.delta_Omega), t);
}

std::pair<Matrix2c, Matrix2c> GateHamiltonian::drive_terms_for(std::size_t pulse_index, double om,
                                                                double t) const {
  const auto& rec = plan_.pulses.at(pulse_index);
  const double sg = static_cast<double>(rec.sign);
  const cplx I(0.0, 1.0);
  Matrix2c s;  // sigma_x or sigma_y
  if (rec.axis == Axis::X)
    s << 0.0, 1.0, 1.0, 0.0;
  else
    s << 0.0, -I, I, 0.0;
  Matrix2c h1 = 0.5 * om * s;
  Matrix2c h2 = 0.5 * om * sg * s;
  if (noise_.crosstalk) {
    Matrix2c sm;  // |1><0|
    sm << 0.0, 0.0, 1.0, 0.0;
    const cplx ph = (rec.axis == Axis::X) ? cplx(1.0, 0.0) : I;
    const double dw = sys_.delta_omega_qubits;
    const Matrix2c on2 = ph * std::polar(1.0, -dw * t) * sm;
    const Matrix2c on1 = ph * std::polar(1.0, dw * t) * sm;
    h2 += 0.5 * om * (on2 + on2.adjoint());
    h1 += 0.5 * om * sg * (on1 + on1.adjoint());
  }
  return {h1, h2};
}

Matrix4c GateHamiltonian::drive(double t) const {
  const auto [h1, h2] = drive_terms(t);
  const Matrix2c I2 = Matrix2c::Identity();
  return Matrix4c(Eigen::kroneckerProduct(h1, I2)) + Matrix4c(Eigen::kroneckerProduct(I2, h2));
}

MatrixXc GateHamiltonian::dense(double t) const {
  const int M = mode_dim();
  MatrixXc H = MatrixXc::Zero(4 * M, 4 * M);
  for (int q = 0; q < 4; ++q) H.block(q * M, q * M, M, M) = mode_block(q);
  const Matrix4c B = drive(t);
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      if (B(p, q) != cplx(0.0, 0.0)) H.block(p * M, q * M, M, M).diagonal().array() += B(p, q);
  return H;
}

double GateHamiltonian::fastest_frequency() const {
  double f = sys_.nu * (1.0 + std::abs(noise_.delta_nu));
  if (model_.variant == ModelVariant::Hf) f *= std::sqrt(3.0);
  for (const auto& p : block_profiles_) f = std::max(f, p->omega_pp() * (1.0 + std::abs(noise_.delta_Omega)));
  if (noise_.crosstalk) f = std::max(f, sys_.delta_omega_qubits);
  return f;
}

}  // namespace tqxy
