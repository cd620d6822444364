#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "tqxy/gate_search.hpp"
#include "tqxy/sequence.hpp"
#include "tqxy/types.hpp"

namespace tqxy {

struct TrajectoryPoint {
  double t = 0.0;
  cplx alpha{0.0, 0.0};
  double theta = 0.0;
};

struct PhaseSpaceOptions {
  double eta = 0.0;
  double nu = 0.0;
  // Static S_z^2 shift c of the effective second mode: theta -= c * int f_z^2 dt.
  double dispersive_shift = 0.0;
  int nodes = 10;              // Gauss-Legendre nodes per panel
  int panels_per_period = 8;   // panels per 2 pi / nu
};

struct PhaseSpaceResult {
  cplx alpha{0.0, 0.0};
  double theta = 0.0;
  std::vector<TrajectoryPoint> samples;  // panel ends, if requested
};

/// alpha(t) = -i eta nu int f_z e^{i nu t} and theta = Im int alpha* d alpha,
/// accumulated panel by panel.  breakpoints must include the interval ends
/// and every point where f_z is not smooth.
PhaseSpaceResult integrate_phase_space(const std::function<double(double)>& fz,
                                       const std::vector<double>& breakpoints,
                                       const PhaseSpaceOptions& opt, bool keep_samples);

/// Same, on the schedule of a plan.
PhaseSpaceResult plan_phase_space(const SequencePlan& plan, const PhaseSpaceOptions& opt,
                                  bool keep_samples);

/// Value of alpha at time t for a plan (integrates from 0).
cplx alpha_exact(double t, const SequencePlan& plan, double eta, double nu);

/// dispersive_shift for H_s: nu eta^2 r / 3.
double second_mode_shift(const FourierSpectrum& spec, double eta, double nu);

/// Approximate circular-gate phase including the dispersive term.
double theta_closed_form(double t, double eta, double nu, double f_k, double xi, double J);

/// Single-harmonic displacement -eta nu f_k / (2 xi) (e^{i xi t} - 1).
cplx alpha_single_harmonic(double t, double eta, double nu, double f_k, double xi);

struct ThetaComparison {
  double line_integral = 0.0;
  double closed_form = 0.0;
};

/// Line-integral phase of a sampled trajectory (the alpha part only) and the
/// closed form at the final sample.  Throws if there are fewer than 200
/// samples per 2 pi / xi.
ThetaComparison theta_of_t(const std::vector<TrajectoryPoint>& traj, double eta, double nu,
                           double f_k, double xi, double J);

enum class BellTarget { PhiPlus, PhiPlusTilde };

/// Fidelity of the ideal propagator D(alpha S_z) exp(i theta S_z^2) acting on
/// |++> (or |+x +y> for PhiPlusTilde) with a thermal mode.
double analytic_bell_fidelity(cplx alpha, double theta, double nbar,
                              BellTarget target = BellTarget::PhiPlus);

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& traj);

// ---------------------------------------------------------------------------
// Cardioid trajectories

struct CardioidPlan {
  double R_card = 0.0;
  int N_tilde = 0;
  double d = 0.0;
  std::vector<double> xi_list;     // rad/s
  std::vector<double> phi_list;    // rotation angle per block
  std::vector<double> phase_list;  // accumulated phase before each block
  std::vector<double> R_list;
  std::vector<double> s_list;      // matched cardioid parameter per block
  std::vector<double> xi_matched;  // before closure refinement
  cplx alpha_end{0.0, 0.0};
  double theta_end = 0.0;
  double t_g = 0.0;
  int outer_iterations = 0;
  int refine_iterations = 0;
};

struct CardioidOptions {
  int N_tilde = 0;            // 0: round(1.22 N)
  int xi_grid = 2000;
  int card_points = 4000;
  double accept_fraction = 0.05;  // matching distance relative to |R_card|
  double alpha_tol = 1e-5;        // closure refinement stop, absolute
  double theta_tol = 1e-7;
  double d_weight = 1.0;          // step weight of d in the refinement
  bool refine_d = true;
  int max_refine = 12;
  int max_outer = 8;
};

double cardioid_radius_guess(int k, double eta, double J, int N_tilde);
cplx cardioid_point(double R, double s);

/// Block-boundary displacements from the rotation recursion.
std::vector<cplx> cardioid_recursion(double f_k, double eta, double nu, int k,
                                     const std::vector<double>& xi_list);

CardioidPlan match_cardioid(const GateCandidate& candidate, const SystemParams& sys,
                            const CardioidOptions& opt = {});

struct ClosureResult {
  std::vector<double> xi_list;
  double d = 0.0;
  cplx alpha_end{0.0, 0.0};
  double theta_end = 0.0;
  double t_g = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Minimum-norm Gauss-Newton closure of a block-detuning vector: drives
/// alpha(t_g) to zero and theta(t_g) to pi/8 by moving log xi_j and
/// (optionally) d.
ClosureResult refine_closure(int k, double d, const std::vector<double>& xi_list,
                             const SystemParams& sys, const CardioidOptions& opt);

}  // namespace tqxy
