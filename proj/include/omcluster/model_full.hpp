#pragma once

#include <Eigen/Dense>
#include <complex>

#include "omcluster/synthesis.hpp"

namespace omc {

// Physical parameters of a realized device, rates in units of the mechanical
// frequency except omega0 (rad/s, used only for thermal occupations) and T
// (kelvin). kappa and Delta cover all M+1 optical modes with the reservoir
// mode first; Delta(0) = 1 puts the reservoir drive on the red sideband.
struct PhysicalParams {
  double omega0 = 2.0 * M_PI * 1e9;
  Eigen::VectorXd delta_omega;  // N mechanical offsets
  Eigen::VectorXd kappa;        // M+1
  Eigen::VectorXd Delta;        // M+1
  Eigen::VectorXd gamma;        // N
  double T = 0.0;               // kelvin
  double r = 0.0;               // reservoir squeezing strength
  double phi0 = 0.0;            // reservoir squeezing phase
  double eps_L0 = 1.0;          // pump modulation frequency
};

// First and second moments of the engineered squeezed reservoir.
struct BathMoments {
  double n_s = 0.0;
  std::complex<double> m_s{0.0, 0.0};
};

// Drift and diffusion of the linearized model in the frame rotating at the
// drive frequencies, mode ordering (a_0..a_M, b_1..b_N, a^dag, b^dag). The
// diffusion splits into a static part and two sidebands rotating at
// 2 eps_L0: N(t) = diff_static + diff_minus e^{-2i eps t} + diff_plus
// e^{+2i eps t}.
struct FullModel {
  Eigen::MatrixXcd drift;
  Eigen::MatrixXcd diff_static;
  Eigen::MatrixXcd diff_minus;
  Eigen::MatrixXcd diff_plus;
  double eps_L0 = 1.0;
  int n_mech = 0;
  int n_opt = 0;
};

// Mean thermal phonon number of a mode at omega_rad (rad/s) in a bath at
// T kelvin; zero at or below T = 0.
double thermal_occupation(double omega_rad, double T);

// n_s = sinh^2 r, m_s = e^{2i phi0} sinh r cosh r.
BathMoments squeezed_bath_moments(double r, double phi0);

// Uniform-rate parameter set matching a plan: one optical linewidth for all
// modes, one mechanical linewidth, detunings and offsets from the plan, the
// squeezing phase locked to the plan's bath phase.
PhysicalParams uniform_params(const CouplingPlan& plan, double kappa,
                              double gamma, double T, double r);

// Build the full (N + M + 1)-mode model from a coupling plan and physical
// parameters. Throws config_error when dimensions or the plan's detunings
// and offsets disagree with the parameters.
FullModel assemble(const CouplingPlan& plan, const PhysicalParams& params);

// Distance of the drift spectrum from the imaginary axis; positive for an
// asymptotically stable model.
double stability_margin(const FullModel& model);
double stability_margin(const Eigen::MatrixXcd& drift);

// Steady-state covariance of the mechanical block at time t, reduced to
// quadrature ordering (x_1..x_N, p_1..p_N) with vacuum = identity. Requires
// a stability margin above 1e-12 * omega0, else throws instability_error.
// n_mech overrides the stored mode count when nonnegative (must agree).
Eigen::MatrixXd steady_covariance(const FullModel& model, double t = 0.0,
                                  int n_mech = -1, double omega0 = 1.0);

}  // namespace omc
