#include "omcluster/synthesis.hpp"

#include <cmath>
#include <complex>

#include "omcluster/errors.hpp"
#include "omcluster/numerics.hpp"

namespace omc {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

std::string to_string(DetuningPolicy policy) {
  return policy == DetuningPolicy::all_positive ? "all-positive" : "mixed-sign";
}

DetuningPolicy detuning_policy_from_string(const std::string& name) {
  if (name == "mixed-sign") return DetuningPolicy::mixed_sign;
  if (name == "all-positive") return DetuningPolicy::all_positive;
  throw config_error("unknown detuning policy '" + name +
                     "' (expected 'mixed-sign' or 'all-positive')");
}

Eigen::MatrixXd wj_matrix(const TargetSpec& spec) {
  const int n = spec.n_nodes();
  const Eigen::MatrixXcd P = spec.Phi().asDiagonal();
  const Eigen::MatrixXcd W =
      kI * spec.V * P * chain_matrix(n, spec.J) * P.conjugate() * spec.V.adjoint();
  const double im = W.imag().norm();
  const double asym = (W - W.transpose()).norm();
  if (im > 1e-10 || asym > 1e-10)
    throw constraint_error(
        "wj_matrix: engineered coupling matrix is not real symmetric "
        "(imaginary residual " + detail::fmt_g(im) + ", asymmetry " +
        detail::fmt_g(asym) + "); constraints violated upstream");
  const Eigen::MatrixXd Wr = W.real();
  return ((Wr + Wr.transpose()) / 2.0).eval();
}

Eigen::VectorXcd g0_vector(const TargetSpec& spec, double drive_phase,
                           double* natural_phase) {
  const int n = spec.n_nodes();
  const Eigen::VectorXcd raw = -kI * spec.J0 * spec.V.col(0).conjugate();
  int ks = 0;
  raw.cwiseAbs().maxCoeff(&ks);
  const double chi = std::arg(raw(ks));
  const double scale = std::abs(raw(ks));
  for (int k = 0; k < n; ++k) {
    if (std::abs(raw(k)) <= 1e-13 * scale) continue;
    const double d = std::arg(raw(k)) - chi;
    const double dist = std::abs(d - M_PI * std::round(d / M_PI));
    if (dist > 1e-10)
      throw constraint_error(
          "g0_vector: first-column phases of V are misaligned by " +
          detail::fmt_g(dist) + "; target not realizable with a single drive");
  }
  if (natural_phase) *natural_phase = chi;
  return raw * std::exp(kI * (drive_phase - chi));
}

InteractionFactors decompose_interaction(const Eigen::MatrixXd& WJ,
                                         const Eigen::VectorXd& delta_omega,
                                         double rank_tol) {
  const int n = static_cast<int>(WJ.rows());
  if (delta_omega.size() != n)
    throw config_error("decompose_interaction: delta_omega length mismatch");
  Eigen::MatrixXd Wm = WJ;
  Wm.diagonal() -= delta_omega;
  Wm = ((Wm + Wm.transpose()) / 2.0).eval();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Wm);
  if (es.info() != Eigen::Success)
    throw numeric_error("decompose_interaction: eigensolver failed");
  const Eigen::VectorXd lam = es.eigenvalues();
  const double cutoff = rank_tol * std::max(1e-300, lam.cwiseAbs().maxCoeff());

  int m = 0;
  for (int i = 0; i < n; ++i)
    if (std::abs(lam(i)) >= cutoff) ++m;
  InteractionFactors factors;
  factors.lambda.resize(m);
  factors.tbar.resize(m, n);
  int row = 0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(lam(i)) < cutoff) continue;
    factors.lambda(row) = lam(i);
    factors.tbar.row(row) = es.eigenvectors().col(i).transpose();
    ++row;
  }
  return factors;
}

double lorentzian_response(double Delta, double kappa, double omega0) {
  const double b = kappa * kappa + Delta * Delta - omega0 * omega0;
  return -2.0 * Delta * b / (b * b + 4.0 * kappa * kappa * omega0 * omega0);
}

DetuningAssignment assign_detunings(const Eigen::VectorXd& lambda, double delta_mag,
                                    double kappa, double omega0) {
  return assign_detunings(lambda,
                          Eigen::VectorXd::Constant(lambda.size(), delta_mag),
                          Eigen::VectorXd::Constant(lambda.size(), kappa), omega0);
}

DetuningAssignment assign_detunings(const Eigen::VectorXd& lambda,
                                    const Eigen::VectorXd& delta_mag,
                                    const Eigen::VectorXd& kappa, double omega0) {
  const int m = static_cast<int>(lambda.size());
  if (delta_mag.size() != m || kappa.size() != m)
    throw config_error("assign_detunings: per-mode parameter length mismatch");
  DetuningAssignment out;
  out.detunings.resize(m);
  out.D.resize(m);
  for (int j = 0; j < m; ++j) {
    if (delta_mag(j) <= 0.0)
      throw config_error("assign_detunings: detuning magnitude must be positive");
    if (kappa(j) <= 0.0)
      throw config_error("assign_detunings: kappa must be positive");
    const double Dp = lorentzian_response(delta_mag(j), kappa(j), omega0);
    if (std::abs(Dp) <= 1e-14)
      throw constraint_error(
          "assign_detunings: response vanishes at |Delta| = " +
          detail::fmt_g(delta_mag(j)) + "; choose a different magnitude");
    if (lambda(j) * Dp > 0.0) {
      out.detunings(j) = delta_mag(j);
      out.D(j) = Dp;
    } else {
      out.detunings(j) = -delta_mag(j);
      out.D(j) = -Dp;
    }
  }
  return out;
}

Eigen::MatrixXcd coupling_matrix(const Eigen::VectorXd& lambda,
                                 const Eigen::MatrixXd& tbar,
                                 const Eigen::VectorXd& D) {
  const int m = static_cast<int>(lambda.size());
  if (tbar.rows() != m || D.size() != m)
    throw config_error("coupling_matrix: factor dimensions mismatch");
  Eigen::VectorXd scale(m);
  for (int j = 0; j < m; ++j) {
    if (lambda(j) * D(j) <= 0.0)
      throw constraint_error(
          "coupling_matrix: D_j and lambda_j must have equal signs (mode " +
          std::to_string(j) + ")");
    scale(j) = std::sqrt(lambda(j) / D(j));
  }
  return (scale.asDiagonal() * tbar).cast<std::complex<double>>();
}

Eigen::VectorXd positive_detuning_offsets(const Eigen::MatrixXd& WJ) {
  Eigen::MatrixXd off = WJ;
  off.diagonal().setZero();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(off, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numeric_error("positive_detuning_offsets: eigensolver failed");
  const double delta0 = es.eigenvalues().maxCoeff();
  return WJ.diagonal().array() + delta0;
}

CouplingPlan synthesize(const TargetSpec& spec, const SynthesisOptions& options) {
  const int n = spec.n_nodes();
  if (options.rank_tol <= 0.0)
    throw config_error("synthesize: rank_tol must be positive");
  const ConstraintReport report = check_constraints(spec);
  if (!report.realizable)
    throw constraint_error(
        "synthesize: target fails realizability constraints (phase residual " +
        detail::fmt_g(report.phase_residual) + ", anticommutator residual " +
        detail::fmt_g(report.anticommutator_residual) + ")");

  const Eigen::MatrixXd WJ = wj_matrix(spec);

  Eigen::VectorXd delta_omega;
  if (options.delta_omega.size() > 0) {
    if (options.policy == DetuningPolicy::all_positive)
      throw config_error(
          "synthesize: explicit delta_omega cannot be combined with the "
          "all-positive policy (offsets are derived from the coupling matrix)");
    if (options.delta_omega.size() != n)
      throw config_error("synthesize: delta_omega length must equal the node count");
    delta_omega = options.delta_omega;
  } else if (options.policy == DetuningPolicy::all_positive) {
    delta_omega = positive_detuning_offsets(WJ);
  } else {
    delta_omega = Eigen::VectorXd::Zero(n);
  }

  const InteractionFactors factors =
      decompose_interaction(WJ, delta_omega, options.rank_tol);
  const int m = static_cast<int>(factors.lambda.size());

  Eigen::VectorXd kappa_vec = options.kappa_per_mode;
  if (kappa_vec.size() == 0)
    kappa_vec = Eigen::VectorXd::Constant(m, options.kappa);
  else if (kappa_vec.size() != m)
    throw config_error("synthesize: per-mode kappa must have one entry per "
                       "auxiliary mode (" + std::to_string(m) + ")");
  Eigen::VectorXd mag_vec = options.delta_mag_per_mode;
  if (mag_vec.size() == 0)
    mag_vec = Eigen::VectorXd::Constant(m, options.delta_mag);
  else if (mag_vec.size() != m)
    throw config_error("synthesize: per-mode detuning magnitudes must have one "
                       "entry per auxiliary mode (" + std::to_string(m) + ")");

  const DetuningAssignment assignment = assign_detunings(factors.lambda, mag_vec, kappa_vec);
  if (options.policy == DetuningPolicy::all_positive)
    for (int j = 0; j < m; ++j)
      if (assignment.detunings(j) <= 0.0)
        throw constraint_error(
            "synthesize: all-positive policy infeasible at |Delta| = " +
            detail::fmt_g(mag_vec(j)) + " (response sign forces a negative detuning)");

  CouplingPlan plan;
  plan.Gbar = coupling_matrix(factors.lambda, factors.tbar, assignment.D);
  plan.detunings = assignment.detunings;
  plan.D = assignment.D;
  plan.delta_omega = delta_omega;
  plan.M = m;
  plan.mode_policy = options.policy;
  plan.drive_phase = options.drive_phase;
  double chi = 0.0;
  plan.g0 = g0_vector(spec, options.drive_phase, &chi);
  plan.bath_phase = options.drive_phase - chi;
  return plan;
}

CouplingPlan synthesize(const TargetSpec& spec, double kappa, double delta_mag,
                        DetuningPolicy policy, double drive_phase) {
  SynthesisOptions options;
  options.kappa = kappa;
  options.delta_mag = delta_mag;
  options.policy = policy;
  options.drive_phase = drive_phase;
  return synthesize(spec, options);
}

DriveParameters drive_parameters(const CouplingPlan& plan, const Eigen::MatrixXd& bare,
                                 const Eigen::VectorXd& kappa,
                                 const Eigen::VectorXd& Delta, double rel_tol) {
  const Eigen::MatrixXcd G = stacked_couplings(plan);
  const int rows = static_cast<int>(G.rows());
  const int n = static_cast<int>(G.cols());
  if (bare.rows() != rows || bare.cols() != n)
    throw config_error("drive_parameters: bare coupling matrix must be (M+1) x N");
  if (kappa.size() != rows || Delta.size() != rows)
    throw config_error("drive_parameters: kappa and Delta must have M+1 entries");

  DriveParameters out;
  out.amplitude.resize(rows);
  out.phase.resize(rows);
  out.alpha.resize(rows);
  for (int j = 0; j < rows; ++j) {
    const double denom = bare.row(j).squaredNorm();
    const double gnorm = G.row(j).norm();
    if (denom == 0.0) {
      if (gnorm > 0.0)
        throw constraint_error("drive_parameters: bare couplings vanish on a row "
                               "with nonzero target couplings (row " +
                               std::to_string(j) + ")");
      out.alpha(j) = 0.0;
      out.amplitude(j) = 0.0;
      out.phase(j) = 0.0;
      continue;
    }
    std::complex<double> alpha = 0.0;
    for (int k = 0; k < n; ++k) alpha += bare(j, k) * G(j, k);
    alpha /= denom;
    const double resid = (G.row(j).transpose() - alpha * bare.row(j).transpose()).norm();
    const double rel = resid / std::max(gnorm, 1e-300);
    out.worst_row_residual = std::max(out.worst_row_residual, rel);
    if (gnorm > 0.0 && rel > rel_tol)
      throw constraint_error(
          "drive_parameters: bare-coupling infeasible; row " + std::to_string(j) +
          " of the couplings is not proportional to the bare row (relative "
          "residual " + detail::fmt_g(rel) + ")");
    const std::complex<double> field = kI * alpha * std::complex<double>(kappa(j), Delta(j));
    out.alpha(j) = alpha;
    out.amplitude(j) = std::abs(field);
    out.phase(j) = std::abs(field) > 0.0 ? std::arg(field) : 0.0;
  }
  return out;
}

Eigen::MatrixXcd stacked_couplings(const CouplingPlan& plan) {
  const int n = static_cast<int>(plan.g0.size());
  Eigen::MatrixXcd G(plan.M + 1, n);
  G.row(0) = plan.g0.transpose();
  if (plan.M > 0) G.bottomRows(plan.M) = plan.Gbar;
  return G;
}

}  // namespace omc
