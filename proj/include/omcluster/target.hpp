#pragma once

#include <Eigen/Dense>

#include "omcluster/graph.hpp"

namespace omc {

// Defining data of a target cluster state on N modes.
//
// Conventions: Theta = diag(e^{-i theta_k}) is the left phase factor of the
// mode transformation V, Phi = diag(e^{i phi_k/2}) the squeezing-phase
// factor (identity on the rectangular-grid family). Rates J0 (reservoir
// chain head) and J (interior chain) are in units of the mechanical
// frequency; z is the target squeezing parameter.
struct TargetSpec {
  Eigen::MatrixXcd V;        // N x N unitary
  Eigen::VectorXd theta;     // theta_k, radians
  Eigen::VectorXd phi_half;  // phi_k / 2, radians
  double J0 = 0.0;
  double J = 0.0;
  double z = 0.0;

  int n_nodes() const { return static_cast<int>(V.rows()); }
  Eigen::VectorXcd Theta() const;  // e^{-i theta_k}
  Eigen::VectorXcd Phi() const;    // e^{+i phi_k/2}
};

struct ConstraintReport {
  // Max distance of arg(V_{k,1}) - arg(V_{1,1}) from the nearest multiple
  // of pi, over the first column of V.
  double phase_residual = 0.0;
  // Frobenius norm of the anticommutator {J_chain, Phi V^T V Phi}.
  double anticommutator_residual = 0.0;
  bool realizable = false;

  static constexpr double tolerance = 1e-10;
};

// Z0 = -i (A - iI)(A + iI)^{-1}, computed through the real-symmetric
// eigendecomposition of the adjacency matrix. Symmetric unitary.
Eigen::MatrixXcd z0_matrix(const ClusterGraph& graph);

// Antisymmetric interior chain coupling matrix: (k, k+1) = -J, (k+1, k) = +J.
Eigen::MatrixXd chain_matrix(int n_nodes, double J);

// Closed-form target for (rectangular) graphs: phi = 0, theta_k = k pi/2,
// V = Theta sqrt(-i Z0). Realizability is certified downstream by
// check_constraints, which is the arbiter on any non-grid input.
TargetSpec rect_target(const ClusterGraph& graph, double J0, double J, double z);

// Residuals of the two realizability conditions (first-column phase
// alignment of V modulo pi, and anticommutation of the chain matrix with
// Phi V^T V Phi). Reports, never throws.
ConstraintReport check_constraints(const TargetSpec& spec);

// Covariance matrix of the target state, ordering (x_1..x_N, p_1..p_N),
// vacuum = identity. Real symmetric, det = 1 (pure).
Eigen::MatrixXd target_covariance(const TargetSpec& spec);

}  // namespace omc
