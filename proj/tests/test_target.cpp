#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "omcluster/errors.hpp"
#include "omcluster/graph.hpp"
#include "omcluster/metrics.hpp"
#include "omcluster/target.hpp"
#include "oracles.hpp"

using Cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using oracle::I;

TEST_CASE("z0 scalar and decoupled cases") {
  const auto g1 = omc::grid_graph(1, 1);
  CHECK(std::abs(omc::z0_matrix(g1)(0, 0) - I) < 1e-14);

  const auto g0 = omc::graph_from_adjacency(Eigen::MatrixXd::Zero(4, 4));
  CHECK((omc::z0_matrix(g0) - I * Mat::Identity(4, 4)).norm() < 1e-14);
}

TEST_CASE("z0 of the 3-node path") {
  const Mat Z = omc::z0_matrix(omc::grid_graph(1, 3));
  CHECK((Z - oracle::z0_path3()).norm() < 1e-12);
  CHECK((Z - Z.transpose()).norm() < 1e-12);
  CHECK((Z.adjoint() * Z - Mat::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("chain matrix") {
  const Eigen::MatrixXd Jb = omc::chain_matrix(3, 0.5);
  CHECK(Jb(0, 1) == -0.5);
  CHECK(Jb(1, 0) == 0.5);
  CHECK(Jb(1, 2) == -0.5);
  CHECK((Jb + Jb.transpose()).norm() == 0.0);
  CHECK(omc::chain_matrix(1, 0.5).norm() == 0.0);
}

TEST_CASE("rect target on the single node") {
  const auto spec = omc::rect_target(omc::grid_graph(1, 1), 1.0, 1.0, 0.5);
  // theta_1 = pi/2 rotates the sole sqrt(i * -i) = 1 entry to -i.
  CHECK(std::abs(spec.V(0, 0) + I) < 1e-14);
  CHECK(spec.theta(0) == doctest::Approx(M_PI / 2));
  CHECK(spec.J0 == 1.0);
  CHECK(spec.z == 0.5);
}

TEST_CASE("rect target on the 3-node path matches frozen column") {
  const auto spec = omc::rect_target(omc::grid_graph(1, 3), 3.4e-3, 0.6e-3, 1.0);
  // Column 0 = (-i a, -i b, i c) with (a, b, c) from the frozen square root.
  CHECK(std::abs(spec.V(0, 0) - Cd(0, -0.7886751345948129)) < 1e-12);
  CHECK(std::abs(spec.V(1, 0) - Cd(0, -0.5773502691896258)) < 1e-12);
  CHECK(std::abs(spec.V(2, 0) - Cd(0, -0.21132486540518708)) < 1e-12);
  CHECK((spec.V.adjoint() * spec.V - Mat::Identity(3, 3)).norm() < 1e-10);
}

TEST_CASE("rect target unitarity and factorization identity on grids") {
  for (const auto& [r, c] : {std::pair{1, 3}, {2, 3}, {3, 3}, {2, 2}}) {
    const auto g = omc::grid_graph(r, c);
    const auto spec = omc::rect_target(g, 1e-3, 1e-3, 1.0);
    const int n = g.n_nodes();
    CHECK((spec.V.adjoint() * spec.V - Mat::Identity(n, n)).norm() < 1e-10);
    // V Phi^2 V^T = -i Theta Z0 Theta with Theta = diag(e^{-i theta}).
    const Mat lhs = spec.V * spec.V.transpose();
    const Mat Th = spec.Theta().asDiagonal();
    const Mat rhs = -I * Th * omc::z0_matrix(g) * Th;
    CHECK((lhs - rhs).norm() < 1e-9);
  }
}

TEST_CASE("rect target validates couplings") {
  const auto g = omc::grid_graph(1, 3);
  CHECK_THROWS_AS(omc::rect_target(g, -1e-3, 1e-3, 1.0), omc::config_error);
  CHECK_THROWS_AS(omc::rect_target(g, 1e-3, -1e-3, 1.0), omc::config_error);
  // zero couplings are legal: the target degenerates to the vacuum state
  CHECK_NOTHROW(omc::rect_target(g, 0.0, 0.0, 0.0));
}

TEST_CASE("constraints hold on odd-sided grids") {
  for (const auto& [r, c] : {std::pair{1, 3}, {2, 3}, {3, 3}}) {
    const auto spec = omc::rect_target(omc::grid_graph(r, c), 3.4e-3, 0.6e-3, 1.0);
    const auto rep = omc::check_constraints(spec);
    CHECK(rep.phase_residual < 1e-10);
    CHECK(rep.anticommutator_residual < 1e-10);
    CHECK(rep.realizable);
  }
}

TEST_CASE("constraints are exactly zero on a single node") {
  const auto spec = omc::rect_target(omc::grid_graph(1, 1), 1.0, 1.0, 1.0);
  const auto rep = omc::check_constraints(spec);
  CHECK(rep.phase_residual == 0.0);
  CHECK(rep.anticommutator_residual == 0.0);
  CHECK(rep.realizable);
}

TEST_CASE("2x2 grid fails realizability") {
  const auto spec = omc::rect_target(omc::grid_graph(2, 2), 1.0, 1.0, 1.0);
  const auto rep = omc::check_constraints(spec);
  CHECK_FALSE(rep.realizable);
  CHECK(rep.phase_residual == doctest::Approx(M_PI / 2).epsilon(1e-6));
  CHECK(rep.anticommutator_residual > 1e-3);
}

TEST_CASE("target covariance at z = 0 is the vacuum") {
  for (const auto& [r, c] : {std::pair{1, 3}, {2, 3}}) {
    const auto spec = omc::rect_target(omc::grid_graph(r, c), 1e-3, 1e-3, 0.0);
    const Eigen::MatrixXd E = omc::target_covariance(spec);
    CHECK((E - Eigen::MatrixXd::Identity(E.rows(), E.cols())).norm() < 1e-12);
  }
}

TEST_CASE("single-mode target covariance is a rotated squeezed vacuum") {
  const auto spec = omc::rect_target(omc::grid_graph(1, 1), 1.0, 1.0, 1.0);
  const Eigen::MatrixXd E = omc::target_covariance(spec);
  CHECK(E(0, 0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(E(1, 1) == doctest::Approx(std::exp(2.0)).epsilon(1e-12));
  CHECK(std::abs(E(0, 1)) < 1e-14);
}

TEST_CASE("target covariance is pure and self-consistent") {
  for (const double z : {0.3, 1.0, 1.5}) {
    const auto spec = omc::rect_target(omc::grid_graph(1, 3), 3.4e-3, 0.6e-3, z);
    const Eigen::MatrixXd E = omc::target_covariance(spec);
    CHECK((E - E.transpose()).norm() < 1e-12);
    const auto purity = omc::purity_check(E);
    CHECK(purity.det == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(purity.min_symplectic == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(omc::fidelity(E, E, 3) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("nullifier variances of the target shrink as (1 + deg) e^{-2z}") {
  const auto g = omc::grid_graph(1, 3);
  double prev[3] = {1e300, 1e300, 1e300};
  for (const double z : {0.0, 0.5, 1.0, 1.5}) {
    const auto spec = omc::rect_target(g, 3.4e-3, 0.6e-3, z);
    const auto Q = omc::nullifier_matrix(g, spec.theta);
    const Eigen::VectorXd nv = omc::nullifier_variances(omc::target_covariance(spec), Q);
    const double want[3] = {2.0, 3.0, 2.0};
    for (int k = 0; k < 3; ++k) {
      CHECK(nv(k) == doctest::Approx(want[k] * std::exp(-2 * z)).epsilon(1e-9));
      CHECK(nv(k) < prev[k]);
      prev[k] = nv(k);
    }
  }
}
