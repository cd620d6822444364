#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "tqxy/dynamics.hpp"

namespace tqxy {

namespace {

// Yoshida weights: three Strang substeps give a fourth-order step.
const double kW1 = 1.0 / (2.0 - std::cbrt(2.0));
const double kW0 = -std::cbrt(2.0) * kW1;

constexpr std::size_t kCacheLimit = 64;

/// exp(-i tau h) for Hermitian 2x2 h.
Matrix2c expm_herm2(const Matrix2c& h, double tau) {
  const double a0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double az = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const double ax = h(1, 0).real();
  const double ay = h(1, 0).imag();
  const double r = std::sqrt(ax * ax + ay * ay + az * az);
  const double x = tau * r;
  const double c = std::cos(x);
  const double s = std::abs(x) > 1e-6 ? std::sin(x) / r : tau * (1.0 - x * x / 6.0);
  const cplx I(0.0, 1.0);
  Matrix2c u;
  u(0, 0) = cplx(c, -s * az);
  u(1, 1) = cplx(c, s * az);
  u(0, 1) = -I * s * cplx(ax, -ay);
  u(1, 0) = -I * s * cplx(ax, ay);
  return std::polar(1.0, -tau * a0) * u;
}

struct Spectral {
  Eigen::VectorXd lambda;
  MatrixXc V;

  explicit Spectral(const MatrixXc& h) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
    if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition of mode block failed");
    lambda = es.eigenvalues();
    V = es.eigenvectors();
  }

  MatrixXc exp(double tau) const {
    Eigen::VectorXcd ph(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) ph(i) = std::polar(1.0, -lambda(i) * tau);
    return V * ph.asDiagonal() * V.adjoint();
  }
};

/// Mode propagators for the four qubit sectors.  For the two-mode model the
/// propagator factorises as kron(E_a, E_b).
class ModeExponentials {
 public:
  explicit ModeExponentials(const GateHamiltonian& H)
      : two_mode_(H.model().variant == ModelVariant::Hf) {
    for (int q = 0; q < 4; ++q) {
      if (two_mode_) {
        a_.emplace_back(H.mode_block_a(q));
        b_.emplace_back(H.mode_block_b(q));
      } else {
        a_.emplace_back(H.mode_block(q));
      }
    }
  }

  bool two_mode() const { return two_mode_; }

  using Entry = std::array<std::pair<MatrixXc, MatrixXc>, 4>;

  const Entry& get(double tau) {
    auto it = cache_.find(tau);
    if (it != cache_.end()) return it->second;
    if (cache_.size() >= kCacheLimit) cache_.clear();
    Entry e;
    for (int q = 0; q < 4; ++q) {
      e[q].first = a_[q].exp(tau);
      if (two_mode_) e[q].second = b_[q].exp(tau);
    }
    return cache_.emplace(tau, std::move(e)).first->second;
  }

 private:
  bool two_mode_;
  std::vector<Spectral> a_, b_;
  std::map<double, Entry> cache_;
};

/// Applies kron(Ea, Eb) to every column of X.  Each column holds an
/// (n1 x n2) array with the first factor's index fastest: E1 acts on it
/// directly, then the column is transposed so that E2 can do the same.
/// On return the column layout is (n2 x n1).
void apply_kron_swap(MatrixXc& X, const MatrixXc& E1, const MatrixXc& E2, MatrixXc& scratch) {
  const Eigen::Index n1 = E1.rows(), n2 = E2.rows(), C = X.cols();
  Eigen::Map<MatrixXc> wide1(X.data(), n1, n2 * C);
  scratch.resize(X.rows(), C);
  Eigen::Map<MatrixXc> out1(scratch.data(), n1, n2 * C);
  out1.noalias() = E1 * wide1;
  for (Eigen::Index c = 0; c < C; ++c) {
    Eigen::Map<const MatrixXc> Y(scratch.col(c).data(), n1, n2);
    Eigen::Map<MatrixXc>(X.col(c).data(), n2, n1) = Y.transpose();
  }
  Eigen::Map<MatrixXc> wide2(X.data(), n2, n1 * C);
  Eigen::Map<MatrixXc> out2(scratch.data(), n2, n1 * C);
  out2.noalias() = E2 * wide2;
  X.swap(scratch);
}

/// Swaps the (n1 x n2) column layout to (n2 x n1).
void transpose_columns(MatrixXc& X, Eigen::Index n1, Eigen::Index n2) {
  MatrixXc out(X.rows(), X.cols());
  for (Eigen::Index c = 0; c < X.cols(); ++c)
    Eigen::Map<MatrixXc>(out.col(c).data(), n2, n1) =
        Eigen::Map<const MatrixXc>(X.col(c).data(), n1, n2).transpose();
  X.swap(out);
}

class UnitaryEngine {
 public:
  UnitaryEngine(const GateHamiltonian& H, QuantumState& s)
      : exps_(H), s_(s), na_(H.model().n_a), nb_(H.model().n_b) {}

  static constexpr bool dissipative = false;

  void apply_A(double tau) {
    const auto& e = exps_.get(tau);
    for (int q = 0; q < 4; ++q) {
      if (!exps_.two_mode()) {
        scratch_.noalias() = e[q].first * s_.blocks[q];
        s_.blocks[q].swap(scratch_);
      } else if (!swapped_) {
        // rows are i_a * n_b + i_b: the b index runs fastest
        apply_kron_swap(s_.blocks[q], e[q].second, e[q].first, scratch_);
      } else {
        apply_kron_swap(s_.blocks[q], e[q].first, e[q].second, scratch_);
      }
    }
    if (exps_.two_mode()) swapped_ = !swapped_;
  }

  void apply_B(const Matrix4c& B) {
    std::array<MatrixXc, 4> out;
    for (int p = 0; p < 4; ++p) {
      out[p] = MatrixXc::Zero(s_.blocks[0].rows(), s_.blocks[0].cols());
      for (int r = 0; r < 4; ++r)
        if (B(p, r) != cplx(0.0, 0.0)) out[p] += B(p, r) * s_.blocks[r];
    }
    s_.blocks = std::move(out);
  }

  void apply_D(double) {}

  /// Restores the i_a * n_b + i_b row order.
  void finish() {
    if (!swapped_) return;
    for (auto& b : s_.blocks) transpose_columns(b, na_, nb_);
    swapped_ = false;
  }

 private:
  ModeExponentials exps_;
  QuantumState& s_;
  int na_, nb_;
  bool swapped_ = false;
  MatrixXc scratch_;
};

MatrixXc dissipator(const GateHamiltonian& H) {
  const int n = H.model().n_a;
  const double nu = H.system().nu;
  const double G = H.noise().gamma(nu);
  const double Nb = H.noise().reservoir_occupation(nu);
  MatrixXc a = MatrixXc::Zero(n, n);
  for (int m = 1; m < n; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
  const MatrixXc I = MatrixXc::Identity(n, n);
  MatrixXc D = MatrixXc::Zero(n * n, n * n);
  auto add = [&](const MatrixXc& L) {
    const MatrixXc LdL = L.adjoint() * L;
    D += MatrixXc(Eigen::kroneckerProduct(MatrixXc(L.conjugate()), L));
    D -= 0.5 * MatrixXc(Eigen::kroneckerProduct(I, LdL));
    D -= 0.5 * MatrixXc(Eigen::kroneckerProduct(MatrixXc(LdL.transpose()), I));
  };
  add(std::sqrt(G * (Nb + 1.0)) * a);
  add(std::sqrt(G * Nb) * MatrixXc(a.adjoint()));
  return D;
}

class LindbladEngine {
 public:
  LindbladEngine(const GateHamiltonian& H, DensityState& s)
      : exps_(H), s_(s), M_(s.mode_dim), D_(dissipator(H)) {}

  static constexpr bool dissipative = true;

  void apply_A(double tau) {
    const auto& e = exps_.get(tau);
    for (int p = 0; p < 4; ++p) s_.rho.middleRows(p * M_, M_) = (e[p].first * s_.rho.middleRows(p * M_, M_)).eval();
    for (int q = 0; q < 4; ++q)
      s_.rho.middleCols(q * M_, M_) = (s_.rho.middleCols(q * M_, M_) * e[q].first.adjoint()).eval();
  }

  void apply_B(const Matrix4c& B) {
    MatrixXc tmp = MatrixXc::Zero(4 * M_, 4 * M_);
    for (int p = 0; p < 4; ++p)
      for (int r = 0; r < 4; ++r)
        if (B(p, r) != cplx(0.0, 0.0)) tmp.middleRows(p * M_, M_) += B(p, r) * s_.rho.middleRows(r * M_, M_);
    s_.rho.setZero();
    for (int q = 0; q < 4; ++q)
      for (int r = 0; r < 4; ++r)
        if (B(q, r) != cplx(0.0, 0.0))
          s_.rho.middleCols(q * M_, M_) += std::conj(B(q, r)) * tmp.middleCols(r * M_, M_);
  }

  void apply_D(double tau) {
    auto it = cache_.find(tau);
    if (it == cache_.end()) {
      if (cache_.size() >= kCacheLimit) cache_.clear();
      it = cache_.emplace(tau, MatrixXc((D_ * tau).exp())).first;
    }
    const MatrixXc& E = it->second;
    MatrixXc Z(M_ * M_, 16);
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) {
        const MatrixXc blk = s_.rho.block(p * M_, q * M_, M_, M_);
        Z.col(4 * p + q) = Eigen::Map<const Eigen::VectorXcd>(blk.data(), M_ * M_);
      }
    Z = (E * Z).eval();
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q)
        s_.rho.block(p * M_, q * M_, M_, M_) = Eigen::Map<const MatrixXc>(Z.col(4 * p + q).data(), M_, M_);
  }

 private:
  ModeExponentials exps_;
  DensityState& s_;
  int M_;
  MatrixXc D_;
  std::map<double, MatrixXc> cache_;
};

/// Walks the plan step by step.  Each step is
///   D(h/2) [A(w/2) B(w) A(w/2)] for w in (w1, w0, w1) D(h/2)
/// with neighbouring A (or D) factors merged.
template <class Engine>
std::size_t run_schedule(const GateHamiltonian& H, const NumericsConfig& num, int multiplier,
                         Engine& eng, int& steps_first) {
  const auto& plan = H.plan();
  const double omega_scale = 1.0 + H.noise().delta_Omega;
  const double sub_w[3] = {kW1, kW0, kW1};
  const double sub_mid[3] = {0.5 * kW1, kW1 + 0.5 * kW0, 1.0 - 0.5 * kW1};
  const double a_len[4] = {0.5 * kW1, 0.5 * (kW1 + kW0), 0.5 * (kW0 + kW1), 0.5 * kW1};

  double pend_a = 0.0, pend_d = 0.0;
  auto flush_a = [&] {
    if (pend_a != 0.0) eng.apply_A(pend_a);
    pend_a = 0.0;
  };
  auto flush_d = [&] {
    if (pend_d != 0.0) eng.apply_D(pend_d);
    pend_d = 0.0;
  };
  auto add_a = [&](double tau) {
    flush_d();
    pend_a += tau;
  };
  auto add_d = [&](double tau) {
    if constexpr (Engine::dissipative) {
      flush_a();
      pend_d += tau;
    }
  };

  std::map<std::pair<const PulseProfile*, int>, std::vector<double>> omega_cache;
  std::size_t total = 0;
  steps_first = 0;
  for (std::size_t i = 0; i < plan.pulses.size(); ++i) {
    const auto& rec = plan.pulses[i];
    const int nst = steps_for_pulse(H, rec.t_pi, num) * multiplier;
    if (i == 0) steps_first = nst;
    const double h = rec.t_pi / nst;
    const PulseProfile& prof = H.profile(i);
    auto key = std::make_pair(&prof, nst);
    auto it = omega_cache.find(key);
    if (it == omega_cache.end()) {
      std::vector<double> om(3 * static_cast<std::size_t>(nst));
      for (int st = 0; st < nst; ++st)
        for (int j = 0; j < 3; ++j) om[3 * st + j] = prof.omega((st + sub_mid[j]) * h) * omega_scale;
      it = omega_cache.emplace(key, std::move(om)).first;
    }
    const std::vector<double>& om = it->second;

    for (int st = 0; st < nst; ++st) {
      add_d(0.5 * h);
      for (int j = 0; j < 3; ++j) {
        add_a(a_len[j] * h);
        flush_a();
        flush_d();
        const double t = rec.t_start + (st + sub_mid[j]) * h;
        const auto [h1, h2] = H.drive_terms_for(i, om[3 * st + j], t);
        const double tau = sub_w[j] * h;
        eng.apply_B(Matrix4c(Eigen::kroneckerProduct(expm_herm2(h1, tau), expm_herm2(h2, tau))));
      }
      add_a(a_len[3] * h);
      add_d(0.5 * h);
    }
    total += static_cast<std::size_t>(nst);
  }
  flush_a();
  flush_d();
  return total;
}

std::vector<int> mode_dims(const GateHamiltonian& H) {
  if (H.model().variant == ModelVariant::Hf) return {H.model().n_a, H.model().n_b};
  return {H.model().n_a};
}

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

void finish_unitary(PropagationResult& res, const QuantumState& s, BellTarget target,
                    const NumericsConfig& num) {
  res.norm_error = s.max_norm_error();
  if (!(res.norm_error <= num.norm_tol))
    throw NumericalError("unitary propagation lost norm: " + sci(res.norm_error));
  res.sigma = s.reduced_qubits();
  res.fidelity = bell_fidelity(res.sigma, target);
  res.infidelity = 1.0 - res.fidelity;
}

void finish_lindblad(PropagationResult& res, const DensityState& s, BellTarget target,
                     const NumericsConfig& num) {
  res.trace_error = std::abs(s.rho.trace() - cplx(1.0, 0.0));
  res.hermiticity_error = (s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(0.5 * (s.rho + s.rho.adjoint()), Eigen::EigenvaluesOnly);
  res.min_eigenvalue = es.eigenvalues().minCoeff();
  if (!(res.trace_error <= num.norm_tol))
    throw NumericalError("master equation lost trace: " + sci(res.trace_error));
  if (!(res.hermiticity_error <= num.norm_tol))
    throw NumericalError("density matrix lost hermiticity: " + sci(res.hermiticity_error));
  if (res.min_eigenvalue < -num.norm_tol)
    throw NumericalError("density matrix lost positivity: " + sci(res.min_eigenvalue));
  res.sigma = s.reduced_qubits();
  res.fidelity = bell_fidelity(res.sigma, target);
  res.infidelity = 1.0 - res.fidelity;
}

void check_numerics(const NumericsConfig& num) {
  if (num.steps_per_pulse < 0) throw InvalidArgument("steps_per_pulse must be >= 0");
  if (num.steps_per_pulse == 0 && num.dt_divisor < 1) throw InvalidArgument("dt_divisor must be >= 1");
  if (!(num.norm_tol > 0.0) || !(num.audit_tol > 0.0)) throw InvalidArgument("tolerances must be positive");
}

}  // namespace

int steps_for_pulse(const GateHamiltonian& H, double t_pi, const NumericsConfig& num) {
  check_numerics(num);
  if (num.steps_per_pulse > 0) return num.steps_per_pulse;
  if (!(t_pi > 0.0)) throw InvalidArgument("steps_for_pulse: t_pi must be positive");
  const double n = std::ceil(t_pi * H.fastest_frequency() * num.dt_divisor / two_pi);
  return std::max(1, static_cast<int>(n));
}

PropagationResult propagate_unitary(const GateHamiltonian& H, const QuantumState& psi0,
                                    const NumericsConfig& num, BellTarget target,
                                    QuantumState* final_state) {
  check_numerics(num);
  if (psi0.mode_dim != H.mode_dim()) throw InvalidArgument("propagate_unitary: state dimension mismatch");
  PropagationResult res;
  QuantumState s = psi0;
  UnitaryEngine eng(H, s);
  res.total_steps = run_schedule(H, num, 1, eng, res.steps_per_pulse);
  eng.finish();
  finish_unitary(res, s, target, num);
  if (num.audit) {
    QuantumState s2 = psi0;
    UnitaryEngine eng2(H, s2);
    int spp2 = 0;
    run_schedule(H, num, 2, eng2, spp2);
    eng2.finish();
    PropagationResult fine;
    finish_unitary(fine, s2, target, num);
    res.audit_delta = std::abs(fine.fidelity - res.fidelity);
    res.audit_passed = *res.audit_delta < num.audit_tol;
  }
  if (final_state) *final_state = std::move(s);
  return res;
}

PropagationResult simulate_gate(const GateHamiltonian& H, const NumericsConfig& num, BellTarget target) {
  const QuantumState psi0 = thermal_product_state(initial_qubits(target), mode_dims(H), num.nbar);
  return propagate_unitary(H, psi0, num, target);
}

PropagationResult propagate_lindblad(const GateHamiltonian& H, const DensityState& rho0,
                                     const NumericsConfig& num, BellTarget target,
                                     DensityState* final_state) {
  check_numerics(num);
  if (H.model().variant != ModelVariant::Hs)
    throw InvalidArgument("propagate_lindblad: heating is modelled on the single-mode Hamiltonian");
  if (rho0.mode_dim != H.mode_dim() || rho0.rho.rows() != 4 * rho0.mode_dim)
    throw InvalidArgument("propagate_lindblad: state dimension mismatch");
  PropagationResult res;
  DensityState s = rho0;
  LindbladEngine eng(H, s);
  res.total_steps = run_schedule(H, num, 1, eng, res.steps_per_pulse);
  finish_lindblad(res, s, target, num);
  if (num.audit) {
    DensityState s2 = rho0;
    LindbladEngine eng2(H, s2);
    int spp2 = 0;
    run_schedule(H, num, 2, eng2, spp2);
    PropagationResult fine;
    finish_lindblad(fine, s2, target, num);
    res.audit_delta = std::abs(fine.fidelity - res.fidelity);
    res.audit_passed = *res.audit_delta < num.audit_tol;
  }
  if (final_state) *final_state = std::move(s);
  return res;
}

}  // namespace tqxy
