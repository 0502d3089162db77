#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <string>

#include "omcluster/errors.hpp"

// Dense complex linear-algebra kernels: principal square root of a symmetric
// unitary matrix and (shifted) Lyapunov solvers. Everything here is a pure
// function of its inputs.

namespace omc {

template <typename Derived>
using complex_matrix_t =
    Eigen::Matrix<std::complex<typename Eigen::NumTraits<typename Derived::Scalar>::Real>,
                  Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

inline std::string fmt_g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::string(buf);
}

// Schur-based factorization of the superoperator C -> M C + C M^T + shift C,
// reusable across right-hand sides (iterative refinement does two solves).
template <typename Real>
class lyapunov_factorization {
 public:
  using Cplx = std::complex<Real>;
  using MatC = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic>;
  using VecC = Eigen::Matrix<Cplx, Eigen::Dynamic, 1>;

  lyapunov_factorization(const MatC& M, Cplx shift) : shift_(shift) {
    Eigen::ComplexSchur<MatC> schur(M);
    if (schur.info() != Eigen::Success)
      throw numeric_error("lyapunov solver: Schur decomposition failed");
    U_ = schur.matrixU();
    T_ = schur.matrixT();
    const Eigen::Index n = T_.rows();
    Real scale = Real(1);
    for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(T_(i, i)));
    Real minsep = std::numeric_limits<Real>::max();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        minsep = std::min(minsep, std::abs(T_(i, i) + T_(j, j) + shift));
    if (minsep <= Real(1e3) * std::numeric_limits<Real>::epsilon() * scale)
      throw numeric_error(
          "lyapunov solver: superoperator singular (smallest eigenvalue-sum magnitude " +
          fmt_g(static_cast<double>(minsep)) + ")");
  }

  // One back-substitution pass: returns C with M C + C M^T + shift C = -N.
  MatC solve(const MatC& N) const {
    const Eigen::Index n = T_.rows();
    const MatC F = U_.adjoint() * N * U_.conjugate();
    MatC X = MatC::Zero(n, n);
    VecC rhs(n);
    for (Eigen::Index j = n - 1; j >= 0; --j) {
      rhs = -F.col(j);
      for (Eigen::Index m = j + 1; m < n; ++m) rhs.noalias() -= T_(j, m) * X.col(m);
      const Cplx c = T_(j, j) + shift_;
      for (Eigen::Index i = n - 1; i >= 0; --i) {
        Cplx acc = rhs(i);
        for (Eigen::Index k = i + 1; k < n; ++k) acc -= T_(i, k) * X(k, j);
        X(i, j) = acc / (T_(i, i) + c);
      }
    }
    return U_ * X * U_.transpose();
  }

 private:
  MatC U_, T_;
  Cplx shift_;
};

}  // namespace detail

// Principal square root of a symmetric unitary matrix Z (Z^T = Z, Z†Z = I).
// Z = X + iY with X, Y commuting real symmetric; X is diagonalized first and
// Y re-diagonalized inside clusters of near-degenerate X eigenvalues, giving
// a real orthogonal Q with Z = Q diag(w) Q^T, |w| = 1. The root takes the
// principal scalar square root per eigenvalue; eigenvalues on the cut
// (Re w < 0, |Im w| <= 1e-12) map deterministically to +i sqrt(|w|).
template <typename Derived>
complex_matrix_t<Derived> symmetric_unitary_sqrt(
    const Eigen::MatrixBase<Derived>& Z_in,
    typename Eigen::NumTraits<typename Derived::Scalar>::Real tol = 1e-10) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Cplx = std::complex<Real>;
  using MatC = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic>;
  using MatR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using VecR = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

  if (Z_in.rows() != Z_in.cols())
    throw numeric_error("symmetric_unitary_sqrt: input must be square");
  const MatC Z = Z_in.template cast<Cplx>();
  const Eigen::Index n = Z.rows();
  if (n == 0) return MatC(0, 0);

  const Real sym_resid = (Z - Z.transpose()).norm();
  if (sym_resid > tol)
    throw numeric_error("symmetric_unitary_sqrt: input not symmetric (residual " +
                        detail::fmt_g(static_cast<double>(sym_resid)) + ")");
  const Real uni_resid = (Z.adjoint() * Z - MatC::Identity(n, n)).norm();
  if (uni_resid > tol)
    throw numeric_error("symmetric_unitary_sqrt: input not unitary (residual " +
                        detail::fmt_g(static_cast<double>(uni_resid)) + ")");

  const MatR X = Z.real();
  const MatR Y = Z.imag();
  Eigen::SelfAdjointEigenSolver<MatR> esx(X);
  if (esx.info() != Eigen::Success)
    throw numeric_error("symmetric_unitary_sqrt: eigensolver failed");
  MatR Q = esx.eigenvectors();
  const VecR d = esx.eigenvalues();

  // Simultaneous diagonalization: X and Y commute exactly in theory, so Y is
  // block diagonal in the X eigenbasis up to clustering of X eigenvalues.
  const Real cluster_gap = Real(1e-7);
  VecR mu(n);
  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index stop = start + 1;
    while (stop < n && d(stop) - d(stop - 1) <= cluster_gap) ++stop;
    const Eigen::Index len = stop - start;
    if (len == 1) {
      mu(start) = Q.col(start).dot(Y * Q.col(start));
    } else {
      MatR B = Q.middleCols(start, len).transpose() * Y * Q.middleCols(start, len);
      B = ((B + B.transpose()) / Real(2)).eval();
      Eigen::SelfAdjointEigenSolver<MatR> esb(B);
      if (esb.info() != Eigen::Success)
        throw numeric_error("symmetric_unitary_sqrt: eigensolver failed");
      Q.middleCols(start, len) = (Q.middleCols(start, len) * esb.eigenvectors()).eval();
      mu.segment(start, len) = esb.eigenvalues();
    }
    start = stop;
  }

  const Real branch_cut_tol = Real(1e-12);
  Eigen::Matrix<Cplx, Eigen::Dynamic, 1> s(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Cplx w(d(i), mu(i));
    const Real aw = std::abs(w);
    Cplx root;
    const Cplx wn = w / aw;
    if (wn.real() < Real(0) && std::abs(wn.imag()) <= branch_cut_tol)
      root = Cplx(Real(0), Real(1));
    else
      root = std::sqrt(wn);
    s(i) = root * std::sqrt(aw);
  }

  const MatC Qc = Q.template cast<Cplx>();
  MatC S = Qc * s.asDiagonal() * Qc.transpose();
  S = ((S + S.transpose()) / Real(2)).eval();
  const Real scale = std::max(Real(1), Z.norm());
  const Real resid = (S * S - Z).norm();
  if (resid > Real(10) * tol * scale)
    throw numeric_error("symmetric_unitary_sqrt: reconstruction residual " +
                        detail::fmt_g(static_cast<double>(resid)) + " exceeds tolerance");
  return S;
}

// Solve M C + C M^T + shift C + N = 0 by complex Schur reduction and
// column-wise back substitution, with one iterative-refinement pass.
template <typename DerivedM, typename DerivedN>
complex_matrix_t<DerivedM> solve_shifted_lyapunov(
    const Eigen::MatrixBase<DerivedM>& M, const Eigen::MatrixBase<DerivedN>& N,
    std::complex<typename Eigen::NumTraits<typename DerivedM::Scalar>::Real> shift,
    typename Eigen::NumTraits<typename DerivedM::Scalar>::Real tol = 1e-10) {
  using Real = typename Eigen::NumTraits<typename DerivedM::Scalar>::Real;
  using Cplx = std::complex<Real>;
  using MatC = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic>;

  if (M.rows() != M.cols()) throw numeric_error("lyapunov solver: M must be square");
  if (N.rows() != M.rows() || N.cols() != M.cols())
    throw numeric_error("lyapunov solver: N must match M in shape");
  const MatC Mc = M.template cast<Cplx>();
  const MatC Nc = N.template cast<Cplx>();

  const detail::lyapunov_factorization<Real> fact(Mc, shift);
  MatC C = fact.solve(Nc);
  MatC R = Mc * C + C * Mc.transpose() + shift * C + Nc;
  C += fact.solve(R);
  R = Mc * C + C * Mc.transpose() + shift * C + Nc;
  const Real nn = Nc.norm();
  if (nn > Real(0) && R.norm() > tol * nn)
    throw numeric_error("lyapunov solver: relative residual " +
                        detail::fmt_g(static_cast<double>(R.norm() / nn)) +
                        " exceeds tolerance");
  return C;
}

// Solve M C + C M^T + N = 0 (all drift eigenvalues must have Re < 0).
template <typename DerivedM, typename DerivedN>
complex_matrix_t<DerivedM> solve_lyapunov(
    const Eigen::MatrixBase<DerivedM>& M, const Eigen::MatrixBase<DerivedN>& N,
    typename Eigen::NumTraits<typename DerivedM::Scalar>::Real tol = 1e-10) {
  using Real = typename Eigen::NumTraits<typename DerivedM::Scalar>::Real;
  return solve_shifted_lyapunov(M, N, std::complex<Real>(0, 0), tol);
}

// Reference implementation: column-stacked Kronecker system
// (I (x) M + M (x) I + shift I) vec(C) = -vec(N), dense LU. Quadratic memory
// in the matrix size; intended for cross-checks and small systems.
template <typename DerivedM, typename DerivedN>
complex_matrix_t<DerivedM> solve_lyapunov_kron(
    const Eigen::MatrixBase<DerivedM>& M, const Eigen::MatrixBase<DerivedN>& N,
    std::complex<typename Eigen::NumTraits<typename DerivedM::Scalar>::Real> shift = {0, 0}) {
  using Real = typename Eigen::NumTraits<typename DerivedM::Scalar>::Real;
  using Cplx = std::complex<Real>;
  using MatC = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic>;
  using VecC = Eigen::Matrix<Cplx, Eigen::Dynamic, 1>;

  if (M.rows() != M.cols()) throw numeric_error("lyapunov solver: M must be square");
  if (N.rows() != M.rows() || N.cols() != M.cols())
    throw numeric_error("lyapunov solver: N must match M in shape");
  const MatC Mc = M.template cast<Cplx>();
  const MatC Nc = N.template cast<Cplx>();
  const Eigen::Index n = Mc.rows();

  MatC K = MatC::Zero(n * n, n * n);
  for (Eigen::Index c = 0; c < n; ++c) K.block(c * n, c * n, n, n) += Mc;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index b = 0; b < n; ++b) K(a * n + b, c * n + b) += Mc(a, c);
  K.diagonal().array() += shift;

  VecC rhs(n * n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) rhs(c * n + r) = -Nc(r, c);
  Eigen::PartialPivLU<MatC> lu(K);
  const VecC x = lu.solve(rhs);
  const Real resid = (K * x - rhs).norm();
  const Real rhsn = rhs.norm();
  if (rhsn > Real(0) && resid > Real(1e-8) * rhsn)
    throw numeric_error("lyapunov solver: kron system residual " +
                        detail::fmt_g(static_cast<double>(resid / rhsn)) +
                        " (singular superoperator?)");

  MatC C(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) C(r, c) = x(c * n + r);
  return C;
}

}  // namespace omc
