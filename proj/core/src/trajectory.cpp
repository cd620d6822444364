#include "tqxy/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <memory>
#include <string>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/minima.hpp>

#include "tqxy/fourier.hpp"
#include "tqxy/pulse.hpp"

namespace tqxy {

namespace {

double legendre(int n, double x) {
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = x;
  for (int l = 2; l <= n; ++l) {
    const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// Gauss-Legendre rule on [-1, 1] plus the matrix S with
// S(i, j) = int_{-1}^{x_i} l_j(s) ds for the Lagrange basis l_j on the nodes.
struct GaussRule {
  int m = 0;
  std::vector<double> x;
  std::vector<double> w;
  Eigen::MatrixXd S;

  explicit GaussRule(int nodes) : m(nodes), x(nodes), w(nodes), S(nodes, nodes) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i < m; ++i) {
      const double b = i / std::sqrt(4.0 * i * i - 1.0);
      J(i, i - 1) = b;
      J(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    for (int i = 0; i < m; ++i) {
      x[i] = es.eigenvalues()(i);
      w[i] = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
    }
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        double acc = 0.5 * (x[i] + 1.0);
        for (int n = 1; n < m; ++n)
          acc += 0.5 * legendre(n, x[j]) * (legendre(n + 1, x[i]) - legendre(n - 1, x[i]));
        S(i, j) = w[j] * acc;
      }
    }
  }
};

const GaussRule& rule(int m) {
  thread_local std::vector<std::unique_ptr<GaussRule>> cache;
  for (const auto& r : cache)
    if (r->m == m) return *r;
  cache.push_back(std::make_unique<GaussRule>(m));
  return *cache.back();
}

class PanelIntegrator {
 public:
  PanelIntegrator(const PhaseSpaceOptions& opt)
      : opt_(opt), g_(rule(opt.nodes)), gv_(opt.nodes), fv_(opt.nodes) {
    if (!(opt.nu > 0.0)) throw InvalidArgument("phase space: nu must be positive");
    if (opt.nodes < 2 || opt.panels_per_period < 1)
      throw InvalidArgument("phase space: bad panel settings");
  }

  template <class F>
  void interval(double a, double b, const F& f, std::vector<TrajectoryPoint>* out) {
    if (!(b > a)) return;
    const double max_h = two_pi / opt_.nu / opt_.panels_per_period;
    const int np = std::max(1, static_cast<int>(std::ceil((b - a) / max_h - 1e-12)));
    const double h = (b - a) / np;
    for (int p = 0; p < np; ++p) {
      const double lo = a + p * h;
      panel(lo, (p + 1 == np) ? b : lo + h, f);
      if (out) out->push_back({t_, alpha_, theta_});
    }
  }

  cplx alpha() const { return alpha_; }
  double theta() const { return theta_; }
  double time() const { return t_; }

 private:
  template <class F>
  void panel(double a, double b, const F& f) {
    const int m = g_.m;
    const double half = 0.5 * (b - a);
    const double en = opt_.eta * opt_.nu;
    for (int i = 0; i < m; ++i) {
      const double t = a + half * (g_.x[i] + 1.0);
      fv_[i] = f(t);
      gv_[i] = fv_[i] * std::polar(1.0, opt_.nu * t);
    }
    cplx da{0.0, 0.0};
    double dth = 0.0;
    for (int i = 0; i < m; ++i) {
      cplx acc{0.0, 0.0};
      for (int j = 0; j < m; ++j) acc += g_.S(i, j) * gv_[j];
      const cplx ai = alpha_ - cplx(0.0, en * half) * acc;
      const double q = -en * std::real(std::conj(ai) * gv_[i]) - opt_.dispersive_shift * fv_[i] * fv_[i];
      dth += g_.w[i] * q;
      da += g_.w[i] * gv_[i];
    }
    alpha_ -= cplx(0.0, en * half) * da;
    theta_ += half * dth;
    t_ = b;
  }

  PhaseSpaceOptions opt_;
  const GaussRule& g_;
  std::vector<cplx> gv_;
  std::vector<double> fv_;
  cplx alpha_{0.0, 0.0};
  double theta_ = 0.0;
  double t_ = 0.0;
};

}  // namespace

PhaseSpaceResult integrate_phase_space(const std::function<double(double)>& fz,
                                       const std::vector<double>& breakpoints,
                                       const PhaseSpaceOptions& opt, bool keep_samples) {
  if (breakpoints.size() < 2) throw InvalidArgument("phase space: need at least two breakpoints");
  PanelIntegrator in(opt);
  PhaseSpaceResult res;
  if (keep_samples) res.samples.push_back({breakpoints.front(), {0.0, 0.0}, 0.0});
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    in.interval(breakpoints[i], breakpoints[i + 1], fz, keep_samples ? &res.samples : nullptr);
  res.alpha = in.alpha();
  res.theta = in.theta();
  return res;
}

PhaseSpaceResult plan_phase_space(const SequencePlan& plan, const PhaseSpaceOptions& opt,
                                  bool keep_samples) {
  PanelIntegrator in(opt);
  PhaseSpaceResult res;
  if (keep_samples) res.samples.push_back({0.0, {0.0, 0.0}, 0.0});
  for (const auto& r : plan.pulses) {
    const PulseParams p = plan.pulse_params(r);
    const double sgn = (r.index % 2 == 0) ? 1.0 : -1.0;
    const double t0 = r.t_start;
    const double inv = 1.0 / r.t_pi;
    auto f = [&](double t) { return sgn * fz_ansatz(p, (t - t0) * inv).f; };
    in.interval(t0, t0 + r.t_pi, f, keep_samples ? &res.samples : nullptr);
  }
  res.alpha = in.alpha();
  res.theta = in.theta();
  return res;
}

cplx alpha_exact(double t, const SequencePlan& plan, double eta, double nu) {
  if (t < 0.0 || t > plan.total_duration * (1.0 + 1e-12))
    throw InvalidArgument("alpha_exact: t outside the schedule");
  if (t == 0.0) return {0.0, 0.0};
  PhaseSpaceOptions opt;
  opt.eta = eta;
  opt.nu = nu;
  PanelIntegrator in(opt);
  for (const auto& r : plan.pulses) {
    if (r.t_start >= t) break;
    const PulseParams p = plan.pulse_params(r);
    const double sgn = (r.index % 2 == 0) ? 1.0 : -1.0;
    const double t0 = r.t_start;
    auto f = [&](double tt) { return sgn * fz_ansatz(p, (tt - t0) / r.t_pi).f; };
    in.interval(t0, std::min(t, t0 + r.t_pi), f, nullptr);
  }
  return in.alpha();
}

double second_mode_shift(const FourierSpectrum& spec, double eta, double nu) {
  return nu * eta * eta * second_mode_J(spec).r / 3.0;
}

double theta_closed_form(double t, double eta, double nu, double f_k, double xi, double J) {
  const double a = eta * eta * nu * nu * f_k * f_k / (4.0 * xi);
  return a * (t - std::sin(xi * t) / xi) + 0.5 * nu * eta * eta * J * t;
}

cplx alpha_single_harmonic(double t, double eta, double nu, double f_k, double xi) {
  return -eta * nu * f_k / (2.0 * xi) * (std::polar(1.0, xi * t) - 1.0);
}

ThetaComparison theta_of_t(const std::vector<TrajectoryPoint>& traj, double eta, double nu,
                           double f_k, double xi, double J) {
  if (traj.size() < 2) throw InvalidArgument("theta_of_t: trajectory too short");
  const double span = traj.back().t - traj.front().t;
  const double periods = std::max(span * std::abs(xi) / two_pi, 1e-300);
  if (static_cast<double>(traj.size() - 1) < 200.0 * periods)
    throw InvalidArgument("theta_of_t: undersampled trajectory (< 200 points per xi period)");
  ThetaComparison out;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const cplx avg = 0.5 * (traj[i].alpha + traj[i - 1].alpha);
    out.line_integral += std::imag(std::conj(avg) * (traj[i].alpha - traj[i - 1].alpha));
  }
  out.closed_form = theta_closed_form(traj.back().t, eta, nu, f_k, xi, J);
  return out;
}

double analytic_bell_fidelity(cplx alpha, double theta, double nbar, BellTarget target) {
  if (nbar < 0.0) throw InvalidArgument("analytic_bell_fidelity: nbar must be >= 0");
  // computational basis |s1 s2>, s = +1 for |0>
  const double sz[4] = {2.0, 0.0, 0.0, -2.0};
  const double s2 = 1.0 / std::sqrt(2.0);
  const cplx I(0.0, 1.0);
  Vector4c q0;
  Eigen::Vector2cd a, b;
  if (target == BellTarget::PhiPlus) {
    a << s2, s2;
    b << s2, s2;
  } else {
    a << s2, s2;
    b << s2, I * s2;
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) q0(2 * i + j) = a(i) * b(j);

  Matrix4c sigma;
  const double a2 = std::norm(alpha);
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      const double ds = sz[p] - sz[q];
      const double damp = std::exp(-a2 * ds * ds * (nbar + 0.5));
      const cplx ph = std::polar(1.0, theta * (sz[p] * sz[p] - sz[q] * sz[q]));
      sigma(p, q) = q0(p) * std::conj(q0(q)) * ph * damp;
    }
  }
  // target: (|psi> + i Z1 Z2 |psi>) / sqrt 2 with |psi> the initial product state
  Vector4c tgt;
  const double zz[4] = {1.0, -1.0, -1.0, 1.0};
  for (int p = 0; p < 4; ++p) tgt(p) = (q0(p) + I * zz[p] * q0(p)) * s2;
  const cplx ov = tgt.dot(sigma * tgt);
  const double purity = std::real((sigma * sigma).trace());
  return std::abs(ov) / std::sqrt(purity);
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& traj) {
  os << "t_s,re_alpha,im_alpha,theta_rad\n" << std::setprecision(17);
  for (const auto& p : traj)
    os << p.t << ',' << p.alpha.real() << ',' << p.alpha.imag() << ',' << p.theta << '\n';
}

// ---------------------------------------------------------------------------

double cardioid_radius_guess(int k, double eta, double J, int N_tilde) {
  const double arg = 1.0 - 64.0 * k * eta * eta * J * N_tilde;
  if (!(arg > 0.0)) throw InvalidArgument("cardioid: dispersive phase exceeds pi/8");
  return std::sqrt(arg) / (4.0 * std::sqrt(3.0));
}

cplx cardioid_point(double R, double s) { return R * (std::polar(1.0, s) - std::polar(1.0, s / 2.0)); }

std::vector<cplx> cardioid_recursion(double f_k, double eta, double nu, int k,
                                     const std::vector<double>& xi_list) {
  std::vector<cplx> out{cplx(0.0, 0.0)};
  double phase = 0.0;
  cplx a{0.0, 0.0};
  for (double xi : xi_list) {
    const double R = eta * nu * f_k / (2.0 * xi);
    const double phi = 16.0 * pi * k * xi / (nu - xi);
    a += R * (1.0 - std::polar(1.0, phi)) * std::polar(1.0, phase);
    phase += phi;
    out.push_back(a);
  }
  return out;
}

namespace {

SequencePlan unchecked_cardioid_plan(int k, double d, const std::vector<double>& xi_list,
                                     double nu) {
  SequencePlan plan;
  plan.kind = "cardioid";
  plan.shape = make_pulse(k, d, pi * k / (nu - xi_list.front()));
  plan.nu = nu;
  plan.block_xi = xi_list;
  const auto& axes = tqxy16_axes();
  double t = 0.0;
  int idx = 0;
  for (std::size_t b = 0; b < xi_list.size(); ++b) {
    const double tpi = pi * k / (nu - xi_list[b]);
    for (int j = 0; j < 16; ++j) {
      PulseRecord r;
      r.index = idx++;
      r.block = static_cast<int>(b);
      r.axis = axes[j];
      r.sign = j >= 8 ? -1 : 1;
      r.t_start = t;
      r.t_pi = tpi;
      r.xi = xi_list[b];
      plan.pulses.push_back(r);
      t += tpi;
    }
  }
  plan.total_duration = t;
  return plan;
}

struct ClosureEval {
  double r[3];
  cplx alpha;
  double theta;
  double t_g;
};

ClosureEval closure_eval(int k, double d, const std::vector<double>& xis, const SystemParams& sys) {
  const auto plan = unchecked_cardioid_plan(k, d, xis, sys.nu);
  PhaseSpaceOptions opt;
  opt.eta = sys.eta;
  opt.nu = sys.nu;
  if (sys.two_mode) opt.dispersive_shift = second_mode_shift(modulated_spectrum(plan.shape), sys.eta, sys.nu);
  const auto res = plan_phase_space(plan, opt, false);
  ClosureEval e;
  e.alpha = res.alpha;
  e.theta = res.theta;
  e.t_g = plan.total_duration;
  e.r[0] = res.alpha.real();
  e.r[1] = res.alpha.imag();
  e.r[2] = res.theta - pi / 8.0;
  return e;
}

}  // namespace

ClosureResult refine_closure(int k, double d0, const std::vector<double>& xi0,
                             const SystemParams& sys, const CardioidOptions& opt) {
  const int n = static_cast<int>(xi0.size());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n + 1);
  Eigen::VectorXd W = Eigen::VectorXd::Ones(n + 1);
  W(n) = opt.refine_d ? opt.d_weight : 0.0;
  auto unpack = [&](const Eigen::VectorXd& v, std::vector<double>& xis, double& d) {
    xis.resize(n);
    for (int j = 0; j < n; ++j) xis[j] = xi0[j] * std::exp(v(j));
    d = d0 * (1.0 + v(n));
  };

  ClosureResult out;
  std::vector<double> xis;
  double d = d0;
  for (int it = 0; it <= opt.max_refine; ++it) {
    unpack(x, xis, d);
    const auto e = closure_eval(k, d, xis, sys);
    out.xi_list = xis;
    out.d = d;
    out.alpha_end = e.alpha;
    out.theta_end = e.theta;
    out.t_g = e.t_g;
    out.iterations = it;
    if (std::abs(e.alpha) < opt.alpha_tol && std::abs(e.r[2]) < opt.theta_tol) {
      out.converged = true;
      break;
    }
    if (it == opt.max_refine) break;
    Eigen::Matrix<double, 3, Eigen::Dynamic> Jm(3, n + 1);
    const double h = 1e-6;
    for (int m = 0; m <= n; ++m) {
      if (W(m) == 0.0) {
        Jm.col(m).setZero();
        continue;
      }
      Eigen::VectorXd q = x;
      q(m) += h;
      std::vector<double> xq;
      double dq;
      unpack(q, xq, dq);
      const auto eq = closure_eval(k, dq, xq, sys);
      for (int r = 0; r < 3; ++r) Jm(r, m) = (eq.r[r] - e.r[r]) / h;
    }
    const Eigen::Vector3d rv(e.r[0], e.r[1], e.r[2]);
    const Eigen::MatrixXd JW = Jm * W.asDiagonal();
    const Eigen::Matrix3d G = JW * JW.transpose();
    const Eigen::Vector3d y = G.ldlt().solve(rv);
    x -= W.asDiagonal() * (JW.transpose() * y);
    for (int j = 0; j < n; ++j) {
      const double xi = xi0[j] * std::exp(x(j));
      if (!(xi > 0.0) || xi >= sys.nu / (8.0 * k))
        throw NumericalError("closure refinement left the (0, nu/8k) detuning window");
    }
  }
  return out;
}

namespace {

struct MatchResult {
  std::vector<double> xi;
  std::vector<double> s;
  bool ok = true;
};

MatchResult match_blocks(int k, double f_k, double R, int N_tilde, const SystemParams& sys,
                         const CardioidOptions& opt) {
  const double nu = sys.nu;
  const double eta = sys.eta;
  const int np = opt.card_points;
  std::vector<double> s_all(np);
  std::vector<cplx> C(np);
  for (int i = 0; i < np; ++i) {
    s_all[i] = 4.0 * pi * i / (np - 1);
    C[i] = cardioid_point(R, s_all[i]);
  }
  const int ng = opt.xi_grid;
  std::vector<double> xg(ng);
  for (int i = 0; i < ng; ++i) xg[i] = (1e-3 + (1.0 - 1e-3) * i / (ng - 1)) * nu / (8.0 * k);

  MatchResult out;
  cplx a{0.0, 0.0};
  double phase = 0.0;
  double s_prev = 0.0;
  std::vector<double> dist(ng);
  for (int j = 0; j < N_tilde; ++j) {
    const bool last = (j == N_tilde - 1);
    int first = 0;
    while (first < np && !(last ? s_all[first] >= s_prev : s_all[first] > s_prev + 1e-9)) ++first;
    if (first >= np) {
      out.ok = false;
      return out;
    }
    auto block_point = [&](double x) {
      const double Rj = eta * nu * f_k / (2.0 * x);
      const double phi = 16.0 * pi * k * x / (nu - x);
      return a + Rj * (1.0 - std::polar(1.0, phi)) * std::polar(1.0, phase);
    };
    auto nearest = [&](cplx z, int* idx) {
      double best = std::numeric_limits<double>::infinity();
      int bi = first;
      for (int i = first; i < np; ++i) {
        const double dd = std::norm(z - C[i]);
        if (dd < best) {
          best = dd;
          bi = i;
        }
      }
      if (idx) *idx = bi;
      return std::sqrt(best);
    };
    for (int i = 0; i < ng; ++i) dist[i] = nearest(block_point(xg[i]), nullptr);
    int pick = -1;
    for (int i = 1; i + 1 < ng; ++i) {
      if (dist[i] <= dist[i - 1] && dist[i] <= dist[i + 1] &&
          dist[i] < opt.accept_fraction * std::abs(R)) {
        pick = i;
        break;
      }
    }
    if (pick < 0) {
      out.ok = false;
      pick = static_cast<int>(std::min_element(dist.begin(), dist.end()) - dist.begin());
    }
    const double lo = xg[std::max(pick - 1, 0)];
    const double hi = xg[std::min(pick + 1, ng - 1)];
    auto fd = [&](double x) { return nearest(block_point(x), nullptr); };
    const auto r = boost::math::tools::brent_find_minima(fd, lo, hi, 40);
    const double x = r.first;
    const double Rj = eta * nu * f_k / (2.0 * x);
    const double phi = 16.0 * pi * k * x / (nu - x);
    a += Rj * (1.0 - std::polar(1.0, phi)) * std::polar(1.0, phase);
    phase += phi;
    int idx = first;
    nearest(a, &idx);
    s_prev = s_all[idx];
    out.xi.push_back(x);
    out.s.push_back(s_prev);
  }
  return out;
}

}  // namespace

CardioidPlan match_cardioid(const GateCandidate& cand, const SystemParams& sys,
                            const CardioidOptions& opt) {
  validate_system(sys);
  if (cand.N < 1) throw InvalidArgument("match_cardioid: candidate needs N >= 1");
  const int k = cand.k;
  const int N0 = opt.N_tilde > 0 ? opt.N_tilde : static_cast<int>(std::lround(1.22 * cand.N));

  struct Variant {
    double d_scale, R_scale;
    int dN;
  };
  const std::vector<Variant> variants{{1.0, 1.0, 0},   {0.99, 1.0, 0}, {1.01, 1.0, 0},
                                      {1.0, 0.98, 0},  {1.0, 1.02, 0}, {1.0, 1.0, -1},
                                      {1.0, 1.0, 1},   {0.98, 0.98, 1}};
  const double R_tol_alpha = 1e-3;
  const double theta_tol = 1e-4;
  const int max_outer = std::min<int>(opt.max_outer, static_cast<int>(variants.size()));

  std::string last_err = "no attempt";
  for (int o = 0; o < max_outer; ++o) {
    const auto& v = variants[o];
    const double d = cand.d * v.d_scale;
    const int Nt = N0 + v.dN;
    const auto ev = detuning_for_d(k, d, sys);
    if (!ev.valid) continue;
    const double R_abs = cardioid_radius_guess(k, sys.eta, ev.J, Nt) * v.R_scale;
    const double R = (ev.f_k < 0.0 ? 1.0 : -1.0) * R_abs;

    const auto m = match_blocks(k, ev.f_k, R, Nt, sys, opt);
    if (!m.ok) {
      last_err = "cardioid matching found no crossing";
      continue;
    }
    ClosureResult cl;
    try {
      cl = refine_closure(k, d, m.xi, sys, opt);
    } catch (const NumericalError& e) {
      last_err = e.what();
      continue;
    }
    if (std::abs(cl.alpha_end) >= R_tol_alpha * std::abs(R) ||
        std::abs(cl.theta_end - pi / 8.0) >= theta_tol) {
      last_err = "closure refinement did not reach tolerance";
      continue;
    }
    CardioidPlan plan;
    plan.R_card = R;
    plan.N_tilde = Nt;
    plan.d = cl.d;
    plan.xi_list = cl.xi_list;
    plan.xi_matched = m.xi;
    plan.s_list = m.s;
    plan.alpha_end = cl.alpha_end;
    plan.theta_end = cl.theta_end;
    plan.t_g = cl.t_g;
    plan.outer_iterations = o + 1;
    plan.refine_iterations = cl.iterations;
    const auto f_k = detuning_for_d(k, cl.d, sys).f_k;
    double phase = 0.0;
    for (double xi : plan.xi_list) {
      const double phi = 16.0 * pi * k * xi / (sys.nu - xi);
      plan.R_list.push_back(sys.eta * sys.nu * f_k / (2.0 * xi));
      plan.phi_list.push_back(phi);
      plan.phase_list.push_back(phase);
      phase += phi;
    }
    return plan;
  }
  throw NumericalError("match_cardioid: no convergence after outer iterations (" + last_err + ")");
}

}  // namespace tqxy
