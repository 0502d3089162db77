#pragma once

#include <Eigen/Dense>

#include "omcluster/graph.hpp"

namespace omc {

// Rows are nullifier coefficient vectors over (x_1..x_N, p_1..p_N).
struct NullifierSet {
  Eigen::MatrixXd Q;  // N x 2N
};

struct PurityReport {
  double det = 0.0;
  double min_symplectic = 0.0;
  // min symplectic eigenvalue >= 1 - 1e-6 under the vacuum-variance-1
  // convention.
  bool physical = false;
};

// Uhlmann fidelity for Gaussian states with at least one pure argument:
// F = 2^n / sqrt(det(E1 + E2)), clamped to [0, 1]. Covariances are 2n x 2n,
// real symmetric, vacuum = identity.
double fidelity(const Eigen::MatrixXd& E1, const Eigen::MatrixXd& E2, int n_modes);

// Q = [diag(sin theta) - A diag(cos theta) | diag(cos theta) + A diag(sin theta)].
NullifierSet nullifier_matrix(const ClusterGraph& graph, const Eigen::VectorXd& theta);

// Diagonal of Q E Q^T: steady-state variances of the nullifiers. Vacuum
// value of entry k is 1 + degree(k).
Eigen::VectorXd nullifier_variances(const Eigen::MatrixXd& E, const NullifierSet& nullifiers);

// det(E) and minimum symplectic eigenvalue; both equal 1 for a pure state.
PurityReport purity_check(const Eigen::MatrixXd& E);

}  // namespace omc
