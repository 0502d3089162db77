#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "omcluster/errors.hpp"
#include "omcluster/numerics.hpp"
#include "oracles.hpp"

using Cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using oracle::I;

TEST_CASE("sqrt of trivial symmetric unitaries") {
  Mat one(1, 1);
  one << Cd(1, 0);
  CHECK(std::abs(omc::symmetric_unitary_sqrt(one)(0, 0) - Cd(1, 0)) < 1e-14);

  // -I maps to +iI on the principal branch, deterministically.
  const Mat mi = -Mat::Identity(2, 2);
  const Mat S = omc::symmetric_unitary_sqrt(mi);
  CHECK((S - I * Mat::Identity(2, 2)).norm() < 1e-12);

  Eigen::MatrixXd mr(1, 1);
  mr << -1.0;
  CHECK(std::abs(omc::symmetric_unitary_sqrt(mr)(0, 0) - I) < 1e-12);
}

TEST_CASE("sqrt of the 3-node path Z matrix matches the frozen reference") {
  const Mat Z = -I * oracle::z0_path3();
  const Mat S = omc::symmetric_unitary_sqrt(Z);
  CHECK((S - oracle::sqrt_minus_i_z0_path3()).norm() < 1e-12);
  CHECK((S * S - Z).norm() < 1e-12);
}

TEST_CASE("sqrt squared reproduces random symmetric unitaries") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> ang(-M_PI + 0.1, M_PI - 0.1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 12;
    const Eigen::MatrixXd Q = oracle::random_orthogonal(n, rng);
    Eigen::VectorXcd f(n);
    for (int i = 0; i < n; ++i) f(i) = std::exp(I * ang(rng));
    const Mat Z = Q.cast<Cd>() * f.asDiagonal() * Q.cast<Cd>().transpose();
    const Mat S = omc::symmetric_unitary_sqrt(Z);
    const double scale = std::max(1.0, Z.norm());
    CHECK((S * S - Z).norm() <= 10 * 1e-10 * scale);
    CHECK((S - S.transpose()).norm() < 1e-10);
    CHECK((S.adjoint() * S - Mat::Identity(n, n)).norm() < 1e-9);
  }
}

TEST_CASE("sqrt input validation") {
  Mat bad(2, 2);
  bad << Cd(1, 0), Cd(0.5, 0), Cd(0, 0), Cd(1, 0);  // not symmetric
  CHECK_THROWS_AS(omc::symmetric_unitary_sqrt(bad), omc::numeric_error);

  const Mat notu = 2.0 * Mat::Identity(2, 2);  // symmetric, not unitary
  CHECK_THROWS_AS(omc::symmetric_unitary_sqrt(notu), omc::numeric_error);

  const Mat rect = Mat::Zero(2, 3);
  CHECK_THROWS_AS(omc::symmetric_unitary_sqrt(rect), omc::numeric_error);
}

TEST_CASE("sqrt near the branch cut is deterministic") {
  // Eigenvalues just off the negative real axis from either side both snap
  // to the +i root.
  for (const double s : {1.0, -1.0}) {
    Mat Zptb = Mat::Zero(2, 2);
    Zptb(0, 0) = std::exp(I * (s * (M_PI - 1e-13)));
    Zptb(1, 1) = Cd(-1, 0);
    const Mat S = omc::symmetric_unitary_sqrt(Zptb);
    CHECK(std::abs(S(0, 0) - I) < 1e-10);
    CHECK(std::abs(S(1, 1) - I) < 1e-12);
  }
}

TEST_CASE("lyapunov trivial cases") {
  const Mat M2 = -Mat::Identity(2, 2);
  const Mat C = omc::solve_lyapunov(M2, 2.0 * Mat::Identity(2, 2));
  CHECK((C - Mat::Identity(2, 2)).norm() < 1e-13);

  Mat Md = Mat::Zero(2, 2);
  Md(0, 0) = Cd(-1, 0);
  Md(1, 1) = Cd(-2, 0);
  Mat Nd = Mat::Zero(2, 2);
  Nd(0, 0) = Cd(2, 0);
  Nd(1, 1) = Cd(8, 0);
  const Mat Cd2 = omc::solve_lyapunov(Md, Nd);
  CHECK(std::abs(Cd2(0, 0) - Cd(1, 0)) < 1e-13);
  CHECK(std::abs(Cd2(1, 1) - Cd(2, 0)) < 1e-13);
  CHECK(std::abs(Cd2(0, 1)) < 1e-14);

  // N = 0 gives C = 0.
  CHECK(omc::solve_lyapunov(M2, Mat::Zero(2, 2)).norm() == 0.0);
}

TEST_CASE("lyapunov matches the row-stacking oracle on random stable systems") {
  std::mt19937 rng(777);
  for (const int n : {3, 4, 6, 9, 12}) {
    const Mat M = oracle::random_stable(n, rng);
    Mat N = oracle::random_complex(n, rng);
    N /= N.norm();
    const Mat C = omc::solve_lyapunov(M, N);
    const Mat Cref = oracle::lyap_rowstack(M, N);
    CHECK((C - Cref).cwiseAbs().maxCoeff() < 1e-10);
    const double resid = (M * C + C * M.transpose() + N).norm();
    CHECK(resid <= 1e-10 * N.norm());
  }
}

TEST_CASE("lyapunov keeps real-symmetric structure") {
  std::mt19937 rng(4242);
  Eigen::MatrixXd Mr(4, 4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) Mr(r, c) = u(rng);
  Eigen::EigenSolver<Eigen::MatrixXd> es(Mr, false);
  Mr.diagonal().array() -= es.eigenvalues().real().maxCoeff() + 0.5;
  Eigen::MatrixXd Nr(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) Nr(r, c) = u(rng);
  Nr = (Nr + Nr.transpose()).eval();
  const Mat C = omc::solve_lyapunov(Mr, Nr);
  CHECK(C.imag().norm() < 1e-12);
  CHECK((C - C.transpose()).norm() < 1e-12);
}

TEST_CASE("shifted lyapunov") {
  Mat m1(1, 1), n1(1, 1);
  m1 << Cd(-1, 0);
  n1 << Cd(4, 0);
  // (-2 + 2i) C = -4  =>  C = 4/(2 - 2i) = 1 + i
  const Mat C = omc::solve_shifted_lyapunov(m1, n1, Cd(0, 2));
  CHECK(std::abs(C(0, 0) - Cd(1, 1)) < 1e-13);

  std::mt19937 rng(99);
  const Mat M = oracle::random_stable(5, rng);
  const Mat N = oracle::random_complex(5, rng);
  const Mat C0 = omc::solve_lyapunov(M, N);
  CHECK((omc::solve_shifted_lyapunov(M, N, Cd(0, 0)) - C0).norm() < 1e-13);
  // Continuity at small shift.
  const Mat Ceps = omc::solve_shifted_lyapunov(M, N, Cd(1e-8, 0));
  CHECK((Ceps - C0).norm() < 1e-6 * C0.norm());
  // Matches the oracle at a finite complex shift.
  const Cd shift(0.3, 1.1);
  const Mat Cs = omc::solve_shifted_lyapunov(M, N, shift);
  CHECK((Cs - oracle::lyap_rowstack(M, N, shift)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("resonant shift is rejected") {
  Mat m1(1, 1), n1(1, 1);
  m1 << Cd(-1, 0);
  n1 << Cd(1, 0);
  CHECK_THROWS_AS(omc::solve_shifted_lyapunov(m1, n1, Cd(2, 0)), omc::numeric_error);

  Mat m2 = Mat::Zero(2, 2);
  m2(0, 0) = Cd(-1, 0);
  m2(1, 1) = Cd(-3, 0);
  CHECK_THROWS_AS(omc::solve_shifted_lyapunov(m2, Mat::Identity(2, 2), Cd(4, 0)),
                  omc::numeric_error);
}

TEST_CASE("kronecker reference solver agrees with the production solver") {
  std::mt19937 rng(2024);
  for (const int n : {2, 5, 8}) {
    const Mat M = oracle::random_stable(n, rng);
    const Mat N = oracle::random_complex(n, rng);
    CHECK((omc::solve_lyapunov_kron(M, N) - omc::solve_lyapunov(M, N))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    const Cd shift(0, 2);
    CHECK((omc::solve_lyapunov_kron(M, N, shift) -
           omc::solve_shifted_lyapunov(M, N, shift))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
}

TEST_CASE("lyapunov dimension validation") {
  const Mat M = -Mat::Identity(2, 2);
  CHECK_THROWS_AS(omc::solve_lyapunov(M, Mat::Identity(3, 3)), omc::numeric_error);
  CHECK_THROWS_AS(omc::solve_lyapunov(Mat::Zero(2, 3), Mat::Identity(2, 2)),
                  omc::numeric_error);
}
