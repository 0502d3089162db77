#include "omcluster/target.hpp"

#include <cmath>
#include <complex>

#include "omcluster/errors.hpp"
#include "omcluster/numerics.hpp"

namespace omc {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

Eigen::VectorXcd TargetSpec::Theta() const {
  return (-kI * theta.cast<std::complex<double>>().array()).exp();
}

Eigen::VectorXcd TargetSpec::Phi() const {
  return (kI * phi_half.cast<std::complex<double>>().array()).exp();
}

Eigen::MatrixXcd z0_matrix(const ClusterGraph& graph) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(graph.adjacency);
  if (es.info() != Eigen::Success)
    throw numeric_error("z0_matrix: eigensolver failed");
  const Eigen::VectorXd d = es.eigenvalues();
  const int n = graph.n_nodes();
  Eigen::VectorXcd f(n);
  for (int i = 0; i < n; ++i)
    f(i) = -kI * (d(i) - kI) / (d(i) + kI);
  const Eigen::MatrixXcd Q = es.eigenvectors().cast<std::complex<double>>();
  return Q * f.asDiagonal() * Q.transpose();
}

Eigen::MatrixXd chain_matrix(int n_nodes, double J) {
  Eigen::MatrixXd Jb = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  for (int k = 0; k + 1 < n_nodes; ++k) {
    Jb(k, k + 1) = -J;
    Jb(k + 1, k) = J;
  }
  return Jb;
}

TargetSpec rect_target(const ClusterGraph& graph, double J0, double J, double z) {
  if (J0 < 0.0 || J < 0.0)
    throw config_error("rect_target: chain couplings J0 and J must be >= 0");
  const int n = graph.n_nodes();
  const Eigen::MatrixXcd S = symmetric_unitary_sqrt((-kI * z0_matrix(graph)).eval());
  TargetSpec spec;
  spec.theta = Eigen::VectorXd::LinSpaced(n, 1, n) * (M_PI / 2);
  spec.phi_half = Eigen::VectorXd::Zero(n);
  spec.V = spec.Theta().asDiagonal() * S;
  spec.J0 = J0;
  spec.J = J;
  spec.z = z;
  return spec;
}

ConstraintReport check_constraints(const TargetSpec& spec) {
  const int n = spec.n_nodes();
  ConstraintReport report;

  // First-column phases must align modulo pi. Entries far below the column
  // scale carry no phase information and are skipped.
  const Eigen::VectorXcd col = spec.V.col(0);
  const double colmax = col.cwiseAbs().maxCoeff();
  const double ref = std::arg(col(0));
  double worst = 0.0;
  for (int k = 1; k < n; ++k) {
    if (std::abs(col(k)) <= 1e-13 * colmax) continue;
    const double d = std::arg(col(k)) - ref;
    const double dist = std::abs(d - M_PI * std::round(d / M_PI));
    worst = std::max(worst, dist);
  }
  report.phase_residual = worst;

  const Eigen::MatrixXd Jb = chain_matrix(n, spec.J);
  const Eigen::MatrixXcd P = spec.Phi().asDiagonal();
  const Eigen::MatrixXcd G = P * spec.V.transpose() * spec.V * P;
  report.anticommutator_residual = (Jb * G + G * Jb).norm();

  report.realizable = report.phase_residual <= ConstraintReport::tolerance &&
                      report.anticommutator_residual <= ConstraintReport::tolerance;
  return report;
}

Eigen::MatrixXd target_covariance(const TargetSpec& spec) {
  const int n = spec.n_nodes();
  const double c = std::cosh(spec.z);
  const double s = std::sinh(spec.z);
  const Eigen::MatrixXcd P2 =
      (2.0 * kI * spec.phi_half.cast<std::complex<double>>().array())
          .exp()
          .matrix()
          .asDiagonal();
  const Eigen::MatrixXcd Vp = spec.V * P2;

  Eigen::MatrixXcd B(2 * n, 2 * n);
  B.topLeftCorner(n, n) = c * spec.V;
  B.topRightCorner(n, n) = s * Vp;
  B.bottomLeftCorner(n, n) = s * Vp.conjugate();
  B.bottomRightCorner(n, n) = c * spec.V.conjugate();

  Eigen::MatrixXcd Swap = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  Swap.topRightCorner(n, n).setIdentity();
  Swap.bottomLeftCorner(n, n).setIdentity();

  Eigen::MatrixXcd R(2 * n, 2 * n);
  R.topLeftCorner(n, n).setIdentity();
  R.topRightCorner(n, n).setIdentity();
  R.bottomLeftCorner(n, n) = -kI * Eigen::MatrixXcd::Identity(n, n);
  R.bottomRightCorner(n, n) = kI * Eigen::MatrixXcd::Identity(n, n);

  const Eigen::MatrixXcd E = R * (B * Swap * B.transpose()) / 2.0 * R.transpose();
  return ((E.real() + E.real().transpose()) / 2.0).eval();
}

}  // namespace omc
