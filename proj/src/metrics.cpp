#include "omcluster/metrics.hpp"

#include <cmath>
#include <complex>
#include <iostream>

#include "omcluster/errors.hpp"

namespace omc {

double fidelity(const Eigen::MatrixXd& E1, const Eigen::MatrixXd& E2, int n_modes) {
  const int dim = 2 * n_modes;
  if (E1.rows() != dim || E1.cols() != dim || E2.rows() != dim || E2.cols() != dim)
    throw numeric_error("fidelity: covariance matrices must be 2N x 2N");
  Eigen::MatrixXd S = E1 + E2;
  S = ((S + S.transpose()) / 2.0).eval();
  const Eigen::LLT<Eigen::MatrixXd> llt(S);
  if (llt.info() != Eigen::Success)
    throw numeric_error("fidelity: E1 + E2 is not positive definite");
  double logdet = 0.0;
  for (int i = 0; i < dim; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
  const double f = std::exp(n_modes * std::log(2.0) - 0.5 * logdet);
  if (f > 1.0 + 1e-9)
    std::cerr << "fidelity: clamped " << f << " to 1\n";
  return std::min(1.0, std::max(0.0, f));
}

NullifierSet nullifier_matrix(const ClusterGraph& graph, const Eigen::VectorXd& theta) {
  const int n = graph.n_nodes();
  if (theta.size() != n)
    throw numeric_error("nullifier_matrix: theta length must match node count");
  const Eigen::VectorXd c = theta.array().cos();
  const Eigen::VectorXd s = theta.array().sin();
  NullifierSet set;
  set.Q.resize(n, 2 * n);
  set.Q.leftCols(n) = Eigen::MatrixXd(s.asDiagonal()) - graph.adjacency * c.asDiagonal();
  set.Q.rightCols(n) = Eigen::MatrixXd(c.asDiagonal()) + graph.adjacency * s.asDiagonal();
  return set;
}

Eigen::VectorXd nullifier_variances(const Eigen::MatrixXd& E, const NullifierSet& nullifiers) {
  if (E.rows() != nullifiers.Q.cols() || E.cols() != nullifiers.Q.cols())
    throw numeric_error("nullifier_variances: covariance shape mismatch");
  return (nullifiers.Q * E * nullifiers.Q.transpose()).diagonal();
}

PurityReport purity_check(const Eigen::MatrixXd& E) {
  if (E.rows() != E.cols() || E.rows() % 2 != 0)
    throw numeric_error("purity_check: covariance must be square with even dimension");
  const int n = static_cast<int>(E.rows()) / 2;
  PurityReport report;
  report.det = E.determinant();

  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n).setIdentity();
  omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es((omega * E).cast<std::complex<double>>(),
                                                       false);
  report.min_symplectic = es.eigenvalues().cwiseAbs().minCoeff();
  report.physical = report.min_symplectic >= 1.0 - 1e-6;
  return report;
}

}  // namespace omc
