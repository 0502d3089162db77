#include "omcluster/model_effective.hpp"

#include <cmath>
#include <complex>

#include "omcluster/errors.hpp"
#include "omcluster/numerics.hpp"

namespace omc {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void check_plan_params(const CouplingPlan& plan, const PhysicalParams& params) {
  const int N = static_cast<int>(plan.g0.size());
  const int M = plan.M;
  if (params.kappa.size() != M + 1 || params.Delta.size() != M + 1)
    throw config_error("effective model: kappa and Delta must have M+1 entries");
  if (params.gamma.size() != N || params.delta_omega.size() != N)
    throw config_error("effective model: gamma and delta_omega must have N entries");
  if (M > 0 &&
      (params.Delta.tail(M) - plan.detunings).cwiseAbs().maxCoeff() > 1e-12)
    throw config_error("effective model: detunings disagree with the plan");
  if ((params.delta_omega - plan.delta_omega).cwiseAbs().maxCoeff() > 1e-12)
    throw config_error("effective model: mechanical offsets disagree with the plan");
  if ((params.kappa.array() <= 0.0).any())
    throw config_error("effective model: optical linewidths must be positive");
  if ((params.gamma.array() <= 0.0).any())
    throw config_error("effective model: mechanical linewidths must be positive");
  if (params.T < 0.0 || params.r < 0.0)
    throw config_error("effective model: temperature and squeezing must be >= 0");
}

// optically induced damping weights 4 Delta_j kappa_j / den_j and the
// sideband intensities |chi_j(+-1)|^2 for the auxiliary modes
struct InducedRates {
  Eigen::VectorXd damping;  // M
  Eigen::VectorXd red;      // 2 kappa_j |chi_j(+1)|^2
  Eigen::VectorXd blue;     // 2 kappa_j |chi_j(-1)|^2
};

InducedRates induced_rates(const CouplingPlan& plan, const PhysicalParams& params) {
  InducedRates out;
  out.damping.resize(plan.M);
  out.red.resize(plan.M);
  out.blue.resize(plan.M);
  for (int j = 0; j < plan.M; ++j) {
    const double k = params.kappa(j + 1);
    const double d = params.Delta(j + 1);
    const double b = k * k + d * d - 1.0;
    out.damping(j) = 4.0 * d * k / (b * b + 4.0 * k * k);
    out.red(j) = 2.0 * k / std::norm(std::complex<double>(k, d - 1.0));
    out.blue(j) = 2.0 * k / std::norm(std::complex<double>(k, d + 1.0));
  }
  return out;
}

}  // namespace

Eigen::MatrixXd w_matrix(const CouplingPlan& plan) {
  const int n = static_cast<int>(plan.g0.size());
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
  W.diagonal() = plan.delta_omega;
  if (plan.M > 0)
    W += (plan.Gbar.transpose() * plan.D.asDiagonal() * plan.Gbar).real();
  return ((W + W.transpose()) / 2.0).eval();
}

Eigen::MatrixXd y_matrix(const CouplingPlan& plan, const PhysicalParams& params,
                         const ModelFlags& flags) {
  check_plan_params(plan, params);
  const int n = static_cast<int>(plan.g0.size());
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(n, n);
  if (flags.mechanical_damping) Y.diagonal() = params.gamma;
  if (flags.optical_noise && plan.M > 0) {
    const InducedRates rates = induced_rates(plan, params);
    const Eigen::MatrixXd Gr = plan.Gbar.real();
    Y += Gr.transpose() * rates.damping.asDiagonal() * Gr;
  }
  return ((Y + Y.transpose()) / 2.0).eval();
}

EffectiveModel build_effective(const TargetSpec& spec, const CouplingPlan& plan,
                               const PhysicalParams& params,
                               const ModelFlags& flags) {
  check_plan_params(plan, params);
  if (std::abs(params.eps_L0 - 1.0) > 1e-9)
    throw config_error(
        "effective model: reservoir sidebands are static only for eps_L0 = 1");
  const int N = static_cast<int>(plan.g0.size());
  const int n = N + 1;

  EffectiveModel model;
  model.flags = flags;
  model.n_mech = N;
  model.W = flags.engineered_w ? wj_matrix(spec) : w_matrix(plan);
  if (model.W.rows() != N)
    throw config_error("effective model: target size disagrees with the plan");
  model.Y = y_matrix(plan, params, flags);

  Eigen::MatrixXcd drift = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  drift(0, 0) = -std::complex<double>(params.kappa(0), params.Delta(0) - 1.0);
  drift.block(0, 1, 1, N) = -kI * plan.g0.transpose();
  drift.block(1, 0, N, 1) = -kI * plan.g0.conjugate();
  drift.block(1, 1, N, N) = -model.Y.cast<std::complex<double>>() -
                            kI * model.W.cast<std::complex<double>>();
  drift.block(n, n, n, n) = drift.block(0, 0, n, n).conjugate();
  model.drift = std::move(drift);

  const double kappa0 = params.kappa(0);
  const BathMoments bath = squeezed_bath_moments(params.r, params.phi0);
  Eigen::MatrixXcd diff = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  diff(0, n) = 2.0 * kappa0 * (1.0 + bath.n_s);
  diff(n, 0) = 2.0 * kappa0 * bath.n_s;
  diff(0, 0) = 2.0 * kappa0 * bath.m_s;
  diff(n, n) = std::conj(2.0 * kappa0 * bath.m_s);
  if (flags.mechanical_damping) {
    for (int k = 0; k < N; ++k) {
      const double nT = thermal_occupation(
          params.omega0 * (1.0 + params.delta_omega(k)), params.T);
      diff(1 + k, n + 1 + k) += 2.0 * params.gamma(k) * (1.0 + nT);
      diff(n + 1 + k, 1 + k) += 2.0 * params.gamma(k) * nT;
    }
  }
  if (flags.optical_noise && plan.M > 0) {
    const InducedRates rates = induced_rates(plan, params);
    const Eigen::MatrixXd Gr = plan.Gbar.real();
    diff.block(1, n + 1, N, N) +=
        (Gr.transpose() * rates.red.asDiagonal() * Gr).cast<std::complex<double>>();
    diff.block(n + 1, 1, N, N) +=
        (Gr.transpose() * rates.blue.asDiagonal() * Gr).cast<std::complex<double>>();
  }
  model.diffusion = std::move(diff);
  return model;
}

Eigen::MatrixXd effective_steady(const TargetSpec& spec, const CouplingPlan& plan,
                                 const PhysicalParams& params,
                                 const ModelFlags& flags) {
  const EffectiveModel model = build_effective(spec, plan, params, flags);
  const int N = model.n_mech;
  const int n = N + 1;

  const double margin = stability_margin(model.drift);
  if (margin <= 1e-12)
    throw instability_error("effective_steady: drift is not stable (margin " +
                            detail::fmt_g(margin) + ")");

  const Eigen::MatrixXcd C = solve_lyapunov(model.drift, model.diffusion);
  Eigen::MatrixXcd Cb(2 * N, 2 * N);
  const auto row = [&](int i) { return i < N ? 1 + i : n + 1 + (i - N); };
  for (int i = 0; i < 2 * N; ++i)
    for (int j = 0; j < 2 * N; ++j) Cb(i, j) = C(row(i), row(j));

  Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
  R.block(0, 0, N, N).setIdentity();
  R.block(0, N, N, N).setIdentity();
  R.block(N, 0, N, N) = -kI * Eigen::MatrixXcd::Identity(N, N);
  R.block(N, N, N, N) = kI * Eigen::MatrixXcd::Identity(N, N);
  const Eigen::MatrixXd E =
      (R * ((Cb + Cb.transpose()) / 2.0) * R.transpose()).real();
  return ((E + E.transpose()) / 2.0).eval();
}

AdiabaticReport adiabatic_report(const CouplingPlan& plan,
                                 const PhysicalParams& params,
                                 const AdiabaticThresholds& thresholds) {
  check_plan_params(plan, params);
  AdiabaticReport report;

  const Eigen::MatrixXcd G = stacked_couplings(plan);
  for (int j = 0; j < G.rows(); ++j) {
    const double pole =
        std::abs(std::complex<double>(params.kappa(j), params.Delta(j)));
    report.ratio_coupling =
        std::max(report.ratio_coupling, G.row(j).cwiseAbs().maxCoeff() / pole);
  }

  for (int j = 1; j <= plan.M; ++j) {
    const double k = params.kappa(j);
    const double d = params.Delta(j);
    report.ratio_response =
        std::max(report.ratio_response, 2.0 * k / std::abs(k * k + d * d - 1.0));
  }

  if (plan.M > 0) {
    const InducedRates rates = induced_rates(plan, params);
    const Eigen::MatrixXd Gr = plan.Gbar.real();
    const Eigen::MatrixXd Yopt =
        Gr.transpose() * rates.damping.asDiagonal() * Gr;
    const Eigen::MatrixXd W = w_matrix(plan);
    const double wmax = W.cwiseAbs().maxCoeff();
    for (int a = 0; a < W.rows(); ++a)
      for (int b = 0; b < W.cols(); ++b)
        if (std::abs(W(a, b)) > 1e-12 * wmax)
          report.ratio_noise = std::max(
              report.ratio_noise, std::abs(Yopt(a, b)) / std::abs(W(a, b)));
  }

  report.valid = report.ratio_coupling <= thresholds.coupling &&
                 report.ratio_response <= thresholds.response &&
                 report.ratio_noise <= thresholds.noise;
  return report;
}

}  // namespace omc
