#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "tqxy/dynamics.hpp"

namespace tqxy {

namespace {

std::vector<double> thermal_weights(int n, double nbar) {
  if (nbar < 0.0) throw InvalidArgument("thermal state: nbar must be >= 0");
  std::vector<double> p(n);
  double total = 0.0;
  for (int m = 0; m < n; ++m) {
    p[m] = std::pow(nbar, m) / std::pow(nbar + 1.0, m + 1);
    total += p[m];
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace

Vector4c initial_qubits(BellTarget target) {
  const double s2 = 1.0 / std::sqrt(2.0);
  Eigen::Vector2cd a, b;
  a << s2, s2;
  if (target == BellTarget::PhiPlus)
    b << s2, s2;
  else
    b << s2, cplx(0.0, s2);
  Vector4c q;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) q(2 * i + j) = a(i) * b(j);
  return q;
}

Vector4c bell_target_vector(BellTarget target) {
  const Vector4c q0 = initial_qubits(target);
  const double zz[4] = {1.0, -1.0, -1.0, 1.0};
  Vector4c t;
  for (int p = 0; p < 4; ++p) t(p) = (q0(p) + cplx(0.0, 1.0) * zz[p] * q0(p)) / std::sqrt(2.0);
  return t;
}

double bell_fidelity(const Matrix4c& sigma, BellTarget target) {
  const Vector4c t = bell_target_vector(target);
  const double purity = std::real((sigma * sigma.adjoint()).trace());
  if (!(purity > 0.0)) throw InvalidArgument("bell_fidelity: zero state");
  return std::abs(t.dot(sigma * t)) / std::sqrt(purity);
}

double bell_fidelity(const QuantumState& s, BellTarget target) {
  return bell_fidelity(s.reduced_qubits(), target);
}

double bell_fidelity(const DensityState& s, BellTarget target) {
  return bell_fidelity(s.reduced_qubits(), target);
}

Matrix4c QuantumState::reduced_qubits() const {
  Matrix4c sigma;
  const Eigen::Map<const Eigen::VectorXd> w(weights.data(), static_cast<Eigen::Index>(weights.size()));
  for (int p = 0; p < 4; ++p) {
    const MatrixXc weighted = blocks[p] * w.cast<cplx>().asDiagonal();
    for (int q = 0; q < 4; ++q) sigma(p, q) = weighted.cwiseProduct(blocks[q].conjugate()).sum();
  }
  return sigma;
}

double QuantumState::max_norm_error() const {
  double worst = 0.0;
  const Eigen::Index C = blocks[0].cols();
  for (Eigen::Index c = 0; c < C; ++c) {
    double n2 = 0.0;
    for (int q = 0; q < 4; ++q) n2 += blocks[q].col(c).squaredNorm();
    worst = std::max(worst, std::abs(std::sqrt(n2) - 1.0));
  }
  return worst;
}

QuantumState thermal_product_state(const Vector4c& q0, const std::vector<int>& mode_dims,
                                   double nbar) {
  if (mode_dims.empty()) throw InvalidArgument("thermal state: need at least one mode");
  std::vector<double> p{1.0};
  for (int n : mode_dims) {
    if (n < 1) throw InvalidArgument("thermal state: Fock dimension must be >= 1");
    const auto pm = thermal_weights(n, nbar);
    std::vector<double> next;
    next.reserve(p.size() * pm.size());
    for (double x : p)
      for (double y : pm) next.push_back(x * y);
    p.swap(next);
  }
  QuantumState s;
  s.mode_dim = static_cast<int>(p.size());
  std::vector<int> members;
  for (int m = 0; m < s.mode_dim; ++m)
    if (p[m] > 0.0) members.push_back(m);
  for (int q = 0; q < 4; ++q) s.blocks[q] = MatrixXc::Zero(s.mode_dim, static_cast<Eigen::Index>(members.size()));
  for (std::size_t c = 0; c < members.size(); ++c) {
    for (int q = 0; q < 4; ++q) s.blocks[q](members[c], static_cast<Eigen::Index>(c)) = q0(q);
    s.weights.push_back(p[members[c]]);
  }
  return s;
}

DensityState thermal_density(const Vector4c& q0, int n_a, double nbar) {
  const auto p = thermal_weights(n_a, nbar);
  DensityState d;
  d.mode_dim = n_a;
  Eigen::VectorXcd pv(n_a);
  for (int m = 0; m < n_a; ++m) pv(m) = p[m];
  const MatrixXc qq = q0 * q0.adjoint();
  d.rho = Eigen::kroneckerProduct(qq, MatrixXc(pv.asDiagonal()));
  return d;
}

Matrix4c DensityState::reduced_qubits() const {
  Matrix4c s;
  const int M = mode_dim;
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) s(p, q) = rho.block(p * M, q * M, M, M).trace();
  return s;
}

MatrixXc xyxy_second_order_hamiltonian(const SecondOrderCoeffs& c, double eta, double nu, int n_a,
                                       bool literal, bool include_parallel) {
  const cplx I(0.0, 1.0);
  Matrix2c sx, sy, sz, i2;
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, -I, I, 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  i2.setIdentity();
  auto pair_sum = [&](const Matrix2c& s) {
    return Matrix4c(Eigen::kroneckerProduct(s, i2)) + Matrix4c(Eigen::kroneckerProduct(i2, s));
  };
  const Matrix4c Sx = pair_sum(sx), Sy = pair_sum(sy), Sz = pair_sum(sz);
  MatrixXc n = MatrixXc::Zero(n_a, n_a);
  for (int m = 0; m < n_a; ++m) n(m, m) = m;
  const MatrixXc Im = MatrixXc::Identity(n_a, n_a);

  const double j_perp = literal ? c.j_perp : 2.0 * c.j_perp;
  MatrixXc H = -j_perp * MatrixXc(Eigen::kroneckerProduct(Matrix4c(Sx * Sx + Sy * Sy), Im));
  if (literal) {
    H += MatrixXc(Eigen::kroneckerProduct(Sz, MatrixXc(c.b_prime * (n + Im) + c.b_dprime * Im)));
    const Matrix4c xy = Matrix4c(Eigen::kroneckerProduct(sx, sy)) + Matrix4c(Eigen::kroneckerProduct(sy, sx));
    H += c.j_xy * MatrixXc(Eigen::kroneckerProduct(xy, Im));
  } else {
    H += MatrixXc(Eigen::kroneckerProduct(Sz, MatrixXc(c.b_prime * (n + 0.5 * Im))));
  }
  if (include_parallel) H -= c.j_par * MatrixXc(Eigen::kroneckerProduct(Matrix4c(Sz * Sz), Im));
  return 0.5 * eta * eta * nu * H;
}

}  // namespace tqxy
