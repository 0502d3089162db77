#include "omcluster/model_full.hpp"

#include <cmath>
#include <complex>

#include "omcluster/errors.hpp"
#include "omcluster/numerics.hpp"

namespace omc {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kHbar = 1.054571817e-34;
constexpr double kBoltzmann = 1.380649e-23;
}

double thermal_occupation(double omega_rad, double T) {
  if (T <= 0.0) return 0.0;
  if (omega_rad <= 0.0)
    throw config_error("thermal_occupation: frequency must be positive");
  return 1.0 / std::expm1(kHbar * omega_rad / (kBoltzmann * T));
}

BathMoments squeezed_bath_moments(double r, double phi0) {
  BathMoments out;
  out.n_s = std::sinh(r) * std::sinh(r);
  out.m_s = std::exp(2.0 * kI * phi0) * std::sinh(r) * std::cosh(r);
  return out;
}

PhysicalParams uniform_params(const CouplingPlan& plan, double kappa,
                              double gamma, double T, double r) {
  const int n = static_cast<int>(plan.g0.size());
  PhysicalParams p;
  p.delta_omega = plan.delta_omega;
  p.kappa = Eigen::VectorXd::Constant(plan.M + 1, kappa);
  p.Delta = Eigen::VectorXd(plan.M + 1);
  p.Delta(0) = 1.0;
  p.Delta.tail(plan.M) = plan.detunings;
  p.gamma = Eigen::VectorXd::Constant(n, gamma);
  p.T = T;
  p.r = r;
  p.phi0 = plan.bath_phase;
  return p;
}

FullModel assemble(const CouplingPlan& plan, const PhysicalParams& params) {
  const int N = static_cast<int>(plan.g0.size());
  const int M = plan.M;
  const int n = N + M + 1;

  if (params.kappa.size() != M + 1 || params.Delta.size() != M + 1)
    throw config_error("assemble: kappa and Delta must have M+1 entries");
  if (params.gamma.size() != N || params.delta_omega.size() != N)
    throw config_error("assemble: gamma and delta_omega must have N entries");
  if (M > 0 &&
      (params.Delta.tail(M) - plan.detunings).cwiseAbs().maxCoeff() > 1e-12)
    throw config_error("assemble: detunings disagree with the coupling plan");
  if ((params.delta_omega - plan.delta_omega).cwiseAbs().maxCoeff() > 1e-12)
    throw config_error("assemble: mechanical offsets disagree with the plan");
  if ((params.kappa.array() <= 0.0).any())
    throw config_error("assemble: optical linewidths must be positive");
  if ((params.gamma.array() <= 0.0).any())
    throw config_error("assemble: mechanical linewidths must be positive");
  if (params.T < 0.0) throw config_error("assemble: temperature must be >= 0");
  if (params.r < 0.0) throw config_error("assemble: squeezing must be >= 0");
  if (params.omega0 <= 0.0)
    throw config_error("assemble: mechanical frequency must be positive");

  const Eigen::MatrixXcd G = stacked_couplings(plan);
  Eigen::VectorXcd Kd(M + 1);
  for (int j = 0; j <= M; ++j) Kd(j) = params.kappa(j) + kI * params.Delta(j);
  const Eigen::VectorXd wk = 1.0 + params.delta_omega.array();
  Eigen::VectorXcd Yd(N);
  for (int k = 0; k < N; ++k) Yd(k) = params.gamma(k) + kI * wk(k);

  Eigen::MatrixXcd drift = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  auto K = Kd.asDiagonal();
  auto Y = Yd.asDiagonal();
  drift.block(0, 0, M + 1, M + 1) = -Eigen::MatrixXcd(K);
  drift.block(0, M + 1, M + 1, N) = -kI * G;
  drift.block(0, n + M + 1, M + 1, N) = -kI * G;
  drift.block(M + 1, 0, N, M + 1) = -kI * G.adjoint();
  drift.block(M + 1, M + 1, N, N) = -Eigen::MatrixXcd(Y);
  drift.block(M + 1, n, N, M + 1) = -kI * G.transpose();
  drift.block(n, M + 1, M + 1, N) = kI * G.conjugate();
  drift.block(n, n, M + 1, M + 1) = -Eigen::MatrixXcd(K).conjugate();
  drift.block(n, n + M + 1, M + 1, N) = kI * G.conjugate();
  drift.block(n + M + 1, 0, N, M + 1) = kI * G.adjoint();
  drift.block(n + M + 1, n, N, M + 1) = kI * G.transpose();
  drift.block(n + M + 1, n + M + 1, N, N) = -Eigen::MatrixXcd(Y).conjugate();

  const BathMoments bath = squeezed_bath_moments(params.r, params.phi0);
  Eigen::MatrixXcd N0 = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int j = 0; j <= M; ++j) N0(j, n + j) = 2.0 * params.kappa(j);
  for (int k = 0; k < N; ++k) {
    const double nT = thermal_occupation(params.omega0 * wk(k), params.T);
    N0(M + 1 + k, n + M + 1 + k) = 2.0 * params.gamma(k) * (1.0 + nT);
    N0(n + M + 1 + k, M + 1 + k) = 2.0 * params.gamma(k) * nT;
  }
  const double kappa0 = params.kappa(0);
  N0(0, n) += 2.0 * kappa0 * bath.n_s;
  N0(n, 0) += 2.0 * kappa0 * bath.n_s;

  FullModel model;
  model.drift = std::move(drift);
  model.diff_static = std::move(N0);
  model.diff_minus = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  model.diff_minus(0, 0) = 2.0 * kappa0 * bath.m_s;
  model.diff_plus = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  model.diff_plus(n, n) = std::conj(2.0 * kappa0 * bath.m_s);
  model.eps_L0 = params.eps_L0;
  model.n_mech = N;
  model.n_opt = M + 1;
  return model;
}

double stability_margin(const Eigen::MatrixXcd& drift) {
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(drift, false);
  if (es.info() != Eigen::Success)
    throw numeric_error("stability_margin: eigensolver failed");
  return -es.eigenvalues().real().maxCoeff();
}

double stability_margin(const FullModel& model) {
  return stability_margin(model.drift);
}

Eigen::MatrixXd steady_covariance(const FullModel& model, double t, int n_mech,
                                  double omega0) {
  const int N = n_mech >= 0 ? n_mech : model.n_mech;
  if (N != model.n_mech)
    throw config_error("steady_covariance: mechanical mode count mismatch");
  const int M = model.n_opt - 1;
  const int n = N + M + 1;
  if (model.drift.rows() != 2 * n)
    throw config_error("steady_covariance: model dimensions inconsistent");

  const double margin = stability_margin(model);
  if (margin <= 1e-12 * omega0)
    throw instability_error("steady_covariance: drift is not stable (margin " +
                            detail::fmt_g(margin) + ")");

  Eigen::MatrixXcd C = solve_lyapunov(model.drift, model.diff_static);
  const double eps = model.eps_L0;
  if (model.diff_minus.cwiseAbs().maxCoeff() > 0.0 ||
      model.diff_plus.cwiseAbs().maxCoeff() > 0.0) {
    const std::complex<double> shift = 2.0 * kI * eps;
    C += solve_shifted_lyapunov(model.drift, model.diff_minus, shift) *
         std::exp(-2.0 * kI * eps * t);
    C += solve_shifted_lyapunov(model.drift, model.diff_plus, -shift) *
         std::exp(2.0 * kI * eps * t);
  }

  Eigen::MatrixXcd Cb(2 * N, 2 * N);
  const auto row = [&](int i) { return i < N ? M + 1 + i : n + M + 1 + (i - N); };
  for (int i = 0; i < 2 * N; ++i)
    for (int j = 0; j < 2 * N; ++j) Cb(i, j) = C(row(i), row(j));

  Eigen::VectorXcd ph(2 * N);
  for (int i = 0; i < 2 * N; ++i)
    ph(i) = std::exp(kI * (i < N ? t : -t));
  Cb = ph.asDiagonal() * Cb * ph.asDiagonal();

  Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
  R.block(0, 0, N, N).setIdentity();
  R.block(0, N, N, N).setIdentity();
  R.block(N, 0, N, N) = -kI * Eigen::MatrixXcd::Identity(N, N);
  R.block(N, N, N, N) = kI * Eigen::MatrixXcd::Identity(N, N);

  const Eigen::MatrixXcd E = R * ((Cb + Cb.transpose()) / 2.0) * R.transpose();
  const Eigen::MatrixXd Er = E.real();
  return ((Er + Er.transpose()) / 2.0).eval();
}

}  // namespace omc
