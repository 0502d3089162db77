#pragma once

#include <Eigen/Dense>

#include <string>

#include "omcluster/target.hpp"

namespace omc {

enum class DetuningPolicy { mixed_sign, all_positive };

std::string to_string(DetuningPolicy policy);
DetuningPolicy detuning_policy_from_string(const std::string& name);

// Physical couplings realizing a target: reservoir couplings g0 on the
// zero-th optical mode, auxiliary couplings Gbar on M further modes with
// signed detunings, and mechanical frequency offsets delta_omega. All rates
// in units of the mechanical frequency.
struct CouplingPlan {
  Eigen::VectorXcd g0;          // N
  Eigen::MatrixXcd Gbar;        // M x N (real-valued under the convention here)
  Eigen::VectorXd detunings;    // M, signed
  Eigen::VectorXd D;            // M, response weight at each detuning
  Eigen::VectorXd delta_omega;  // N
  int M = 0;
  DetuningPolicy mode_policy = DetuningPolicy::mixed_sign;
  double drive_phase = 0.0;  // arg(alpha_0), the one controllable g0 phase
  double bath_phase = 0.0;   // squeezing phase matched to the g0 gauge
};

// Retained eigenpairs of W^J - W^delta: lambda holds the M nonzero
// eigenvalues (ascending), tbar the corresponding eigenvectors as rows.
struct InteractionFactors {
  Eigen::VectorXd lambda;  // M
  Eigen::MatrixXd tbar;    // M x N
};

struct DetuningAssignment {
  Eigen::VectorXd detunings;  // signed
  Eigen::VectorXd D;          // response at the signed detuning; D_j lambda_j > 0
};

struct DriveParameters {
  Eigen::VectorXd amplitude;    // E_j
  Eigen::VectorXd phase;        // phi_Lj
  Eigen::VectorXcd alpha;       // recovered intracavity amplitudes
  double worst_row_residual = 0.0;
};

struct SynthesisOptions {
  double kappa = 0.05;      // auxiliary-mode linewidth (uniform)
  double delta_mag = 30.0;  // common |Delta_j|
  // Optional per-mode overrides, length M once the mode count is known.
  Eigen::VectorXd kappa_per_mode;
  Eigen::VectorXd delta_mag_per_mode;
  DetuningPolicy policy = DetuningPolicy::mixed_sign;
  double drive_phase = 0.0;
  double rank_tol = 1e-10;
  // Mechanical frequency offsets; empty selects the policy default (zero for
  // mixed-sign, positive_detuning_offsets for all-positive).
  Eigen::VectorXd delta_omega;
};

// W^J = Re(i V Phi J_chain Phi^* V^dagger): the phonon-phonon Hamiltonian the
// couplings must reproduce. Throws if the imaginary or asymmetric residual
// exceeds 1e-10 (constraints violated upstream).
Eigen::MatrixXd wj_matrix(const TargetSpec& spec);

// Reservoir couplings: -i J0 conj(V_{k,1}) rotated to the requested global
// drive phase. All entries share one phase modulo pi; violation throws.
// natural_phase (optional out) receives the pre-rotation phase of the
// dominant entry, so bath_phase = drive_phase - natural_phase.
Eigen::VectorXcd g0_vector(const TargetSpec& spec, double drive_phase,
                           double* natural_phase = nullptr);

// Eigendecomposition of W^J - diag(delta_omega) with eigenvalues below
// rank_tol * max|lambda| discarded.
InteractionFactors decompose_interaction(const Eigen::MatrixXd& WJ,
                                         const Eigen::VectorXd& delta_omega,
                                         double rank_tol = 1e-10);

// Optical spring response of a driven mode at detuning Delta.
double lorentzian_response(double Delta, double kappa, double omega0 = 1.0);

// Pick sign(Delta_j) so the response D_j has the sign of lambda_j.
DetuningAssignment assign_detunings(const Eigen::VectorXd& lambda, double delta_mag,
                                    double kappa, double omega0 = 1.0);
DetuningAssignment assign_detunings(const Eigen::VectorXd& lambda,
                                    const Eigen::VectorXd& delta_mag,
                                    const Eigen::VectorXd& kappa, double omega0 = 1.0);

// Gbar = diag(sqrt(lambda_j / D_j)) tbar, satisfying Gbar^dagger D Gbar =
// tbar^T diag(lambda) tbar.
Eigen::MatrixXcd coupling_matrix(const Eigen::VectorXd& lambda,
                                 const Eigen::MatrixXd& tbar,
                                 const Eigen::VectorXd& D);

// Mechanical offsets delta_omega_k = W^J_{kk} + delta0 with delta0 the top
// eigenvalue of the off-diagonal part, making W^J - W^delta negative
// semidefinite so every retained lambda_j < 0 pairs with Delta_j > 0.
Eigen::VectorXd positive_detuning_offsets(const Eigen::MatrixXd& WJ);

// Full pipeline: constraints check, W^J, offsets per policy, rank-filtered
// decomposition, detuning signs, couplings, reservoir vector.
CouplingPlan synthesize(const TargetSpec& spec, const SynthesisOptions& options);
CouplingPlan synthesize(const TargetSpec& spec, double kappa, double delta_mag,
                        DetuningPolicy policy, double drive_phase);

// Invert G_{jk} = bare_{jk} alpha_j, alpha_j = -i E_j e^{i phi_Lj}/(kappa_j +
// i Delta_j) row by row. bare is (M+1) x N (row 0 pairs with g0), kappa and
// Delta are the per-mode cavity parameters including mode 0. Throws when a
// row of couplings is not proportional to the bare row.
DriveParameters drive_parameters(const CouplingPlan& plan, const Eigen::MatrixXd& bare,
                                 const Eigen::VectorXd& kappa,
                                 const Eigen::VectorXd& Delta, double rel_tol = 1e-8);

// (M+1) x N coupling matrix with g0 stacked on top of Gbar.
Eigen::MatrixXcd stacked_couplings(const CouplingPlan& plan);

}  // namespace omc
