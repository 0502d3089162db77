#pragma once

#include <Eigen/Dense>

#include "omcluster/model_full.hpp"
#include "omcluster/synthesis.hpp"
#include "omcluster/target.hpp"

namespace omc {

// Term selection for the reduced model obtained by adiabatic elimination of
// the auxiliary optical modes. engineered_w swaps the realized mechanical
// coupling matrix for the exact engineered one; the noise flags drop the
// optically induced damping/noise and the intrinsic mechanical bath.
struct ModelFlags {
  bool engineered_w = false;
  bool optical_noise = true;
  bool mechanical_damping = true;
};

// Idealized reservoir-engineering limit: exact couplings, no spurious noise.
inline ModelFlags ideal_flags() { return {true, false, false}; }

// Reduced model of the reservoir mode plus mechanics, mode ordering
// (a_0, b_1..b_N, a_0^dag, b^dag), frame rotating at the mechanical
// frequency. The diffusion is static; the squeezed-reservoir sidebands are
// resonant here, which requires eps_L0 = 1.
struct EffectiveModel {
  Eigen::MatrixXd W;           // mechanical coupling matrix
  Eigen::MatrixXd Y;           // mechanical damping matrix
  Eigen::MatrixXcd drift;      // 2(N+1) x 2(N+1)
  Eigen::MatrixXcd diffusion;  // static
  ModelFlags flags;
  int n_mech = 0;
};

// Mechanical coupling matrix realized by a plan: frequency offsets plus the
// detuned-mode contribution Gbar^T diag(D) Gbar.
Eigen::MatrixXd w_matrix(const CouplingPlan& plan);

// Mechanical damping matrix: intrinsic linewidths plus the off-resonant
// optically induced rates, per the flags.
Eigen::MatrixXd y_matrix(const CouplingPlan& plan, const PhysicalParams& params,
                         const ModelFlags& flags = {});

EffectiveModel build_effective(const TargetSpec& spec, const CouplingPlan& plan,
                               const PhysicalParams& params,
                               const ModelFlags& flags = {});

// Steady covariance of the reduced model, quadrature ordering
// (x_1..x_N, p_1..p_N), vacuum = identity. One static Lyapunov solve.
Eigen::MatrixXd effective_steady(const TargetSpec& spec, const CouplingPlan& plan,
                                 const PhysicalParams& params,
                                 const ModelFlags& flags = {});

struct AdiabaticThresholds {
  double coupling = 0.05;
  double response = 0.05;
  double noise = 0.1;
};

// Smallness parameters of the adiabatic elimination: coupling over cavity
// pole, sideband response of the auxiliary modes, induced damping over
// engineered coupling.
struct AdiabaticReport {
  double ratio_coupling = 0.0;
  double ratio_response = 0.0;
  double ratio_noise = 0.0;
  bool valid = false;
};

AdiabaticReport adiabatic_report(const CouplingPlan& plan,
                                 const PhysicalParams& params,
                                 const AdiabaticThresholds& thresholds = {});

}  // namespace omc
