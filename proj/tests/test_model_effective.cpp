#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "omcluster/errors.hpp"
#include "omcluster/graph.hpp"
#include "omcluster/metrics.hpp"
#include "omcluster/model_effective.hpp"
#include "omcluster/model_full.hpp"
#include "omcluster/synthesis.hpp"
#include "omcluster/target.hpp"
#include "oracles.hpp"

namespace {

struct Fig1 {
  omc::ClusterGraph graph = omc::grid_graph(1, 3);
  omc::TargetSpec spec = omc::rect_target(graph, 3.4e-3, 0.6e-3, 1.0);
  omc::CouplingPlan plan = omc::synthesize(
      spec, 0.05, 30.0, omc::DetuningPolicy::mixed_sign, -M_PI / 2);
  omc::PhysicalParams params = omc::uniform_params(plan, 0.05, 1e-8, 0.01, 1.0);
};

omc::CouplingPlan bare_plan(int n) {
  omc::CouplingPlan plan;
  plan.g0 = Eigen::VectorXcd::Zero(n);
  plan.Gbar = Eigen::MatrixXcd(0, n);
  plan.detunings = Eigen::VectorXd(0);
  plan.D = Eigen::VectorXd(0);
  plan.delta_omega = Eigen::VectorXd::Zero(n);
  plan.M = 0;
  return plan;
}

}  // namespace

TEST_CASE("uncoupled plan gives diagonal coupling and damping matrices") {
  auto plan = bare_plan(2);
  plan.delta_omega << 1e-4, -2e-4;
  auto params = omc::uniform_params(plan, 0.05, 1e-6, 0.0, 0.0);
  CHECK((omc::w_matrix(plan) -
         Eigen::MatrixXd(plan.delta_omega.asDiagonal()))
            .norm() == 0.0);
  CHECK((omc::y_matrix(plan, params) -
         Eigen::MatrixXd(params.gamma.asDiagonal()))
            .norm() == 0.0);

  // damping flag removes the intrinsic linewidth
  omc::ModelFlags flags;
  flags.mechanical_damping = false;
  CHECK(omc::y_matrix(plan, params, flags).norm() == 0.0);
}

TEST_CASE("realized coupling matrix reproduces the engineered one") {
  const auto spec = omc::rect_target(omc::grid_graph(1, 3), 3.4e-3, 0.6e-3, 1.0);
  const Eigen::MatrixXd WJ = omc::wj_matrix(spec);
  for (auto policy :
       {omc::DetuningPolicy::mixed_sign, omc::DetuningPolicy::all_positive}) {
    const auto plan = omc::synthesize(spec, 0.05, 30.0, policy, -M_PI / 2);
    CHECK((omc::w_matrix(plan) - WJ).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("engineered flag swaps in the exact coupling matrix") {
  const Fig1 f;
  omc::ModelFlags flags;
  flags.engineered_w = true;
  const auto model = omc::build_effective(f.spec, f.plan, f.params, flags);
  CHECK((model.W - omc::wj_matrix(f.spec)).norm() == 0.0);

  const auto realized = omc::build_effective(f.spec, f.plan, f.params);
  CHECK((realized.W - omc::w_matrix(f.plan)).norm() == 0.0);
}

TEST_CASE("optically induced damping is indefinite") {
  const Fig1 f;
  omc::ModelFlags flags;
  flags.mechanical_damping = false;
  const Eigen::MatrixXd Yopt = omc::y_matrix(f.plan, f.params, flags);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Yopt);
  CHECK(es.eigenvalues().minCoeff() < 0.0);
  CHECK(es.eigenvalues().maxCoeff() > 0.0);
  CHECK(Yopt.cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("noise flags select the diffusion blocks") {
  const Fig1 f;
  const int n = 4;

  omc::ModelFlags ideal = omc::ideal_flags();
  const auto mi = omc::build_effective(f.spec, f.plan, f.params, ideal);
  // only the reservoir entries survive
  Eigen::MatrixXcd mech = mi.diffusion;
  mech(0, n) = 0;
  mech(n, 0) = 0;
  mech(0, 0) = 0;
  mech(n, n) = 0;
  CHECK(mech.norm() == 0.0);

  const auto mr = omc::build_effective(f.spec, f.plan, f.params);
  CHECK(mr.diffusion.block(1, n + 1, 3, 3).norm() > 0.0);
  CHECK(mr.diffusion.block(n + 1, 1, 3, 3).norm() > 0.0);
}

TEST_CASE("adiabatic ratios at the headline point") {
  const Fig1 f;
  const auto report = omc::adiabatic_report(f.plan, f.params);
  CHECK(report.ratio_coupling == doctest::Approx(3.4137e-3).epsilon(1e-3));
  CHECK(report.ratio_response ==
        doctest::Approx(0.1 / 899.0025).epsilon(1e-6));
  // induced damping over coupling tracks 2 kappa / Delta^2
  CHECK(std::abs(report.ratio_noise - 2.0 * 0.05 / 900.0) <
        0.02 * report.ratio_noise);
  CHECK(report.valid);
}

TEST_CASE("auxiliary modes near resonance break the adiabatic regime") {
  const auto spec = omc::rect_target(omc::grid_graph(1, 3), 3.4e-3, 0.6e-3, 1.0);
  const auto plan = omc::synthesize(spec, 1.0, 1.0,
                                    omc::DetuningPolicy::mixed_sign, 0.0);
  const auto params = omc::uniform_params(plan, 1.0, 1e-8, 0.0, 0.0);
  const auto report = omc::adiabatic_report(plan, params);
  CHECK(report.ratio_response == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(report.valid);
}

TEST_CASE("ideal reduced model reaches the target exactly") {
  const auto graph = omc::grid_graph(1, 3);
  const auto spec = omc::rect_target(graph, 3.4e-3, 0.6e-3, 1.0);
  const auto plan = omc::synthesize(spec, 0.05, 30.0,
                                    omc::DetuningPolicy::mixed_sign, -M_PI / 2);

  SUBCASE("no squeezing gives vacuum") {
    const auto params = omc::uniform_params(plan, 0.05, 1e-8, 0.0, 0.0);
    const Eigen::MatrixXd E =
        omc::effective_steady(spec, plan, params, omc::ideal_flags());
    CHECK((E - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-9);
  }

  SUBCASE("squeezed reservoir gives the cluster state") {
    const auto params = omc::uniform_params(plan, 0.05, 1e-8, 0.0, 1.0);
    const Eigen::MatrixXd E =
        omc::effective_steady(spec, plan, params, omc::ideal_flags());
    const Eigen::MatrixXd Et = omc::target_covariance(spec);
    CHECK(omc::fidelity(E, Et, 3) >= 1.0 - 1e-6);
  }
}

TEST_CASE("reduced model tracks the full one at the headline point") {
  const Fig1 f;
  const auto model = omc::assemble(f.plan, f.params);
  const Eigen::MatrixXd E_full = omc::steady_covariance(model);
  const Eigen::MatrixXd E_eff =
      omc::effective_steady(f.spec, f.plan, f.params);
  const double dev = (E_full - E_eff).norm() / E_full.norm();
  CHECK(dev == doctest::Approx(0.02043579537356465).epsilon(1e-6));
  CHECK(dev < 0.05);

  // the deviation shrinks as the couplings shrink
  double last = dev;
  for (double scale : {0.5, 0.25}) {
    const auto spec2 = omc::rect_target(f.graph, 3.4e-3 * scale, 0.6e-3 * scale, 1.0);
    const auto plan2 = omc::synthesize(
        spec2, 0.05, 30.0, omc::DetuningPolicy::mixed_sign, -M_PI / 2);
    const auto params2 = omc::uniform_params(plan2, 0.05, 1e-8, 0.01, 1.0);
    const Eigen::MatrixXd full2 = omc::steady_covariance(omc::assemble(plan2, params2));
    const Eigen::MatrixXd eff2 = omc::effective_steady(spec2, plan2, params2);
    const double dev2 = (full2 - eff2).norm() / full2.norm();
    CHECK(dev2 < last);
    last = dev2;
  }
}

TEST_CASE("reduced model validation") {
  const Fig1 f;

  omc::PhysicalParams p = f.params;
  p.eps_L0 = 1.0 + 1e-6;
  CHECK_THROWS_AS(omc::build_effective(f.spec, f.plan, p), omc::config_error);

  p = f.params;
  p.kappa = Eigen::VectorXd::Constant(2, 0.05);
  CHECK_THROWS_AS(omc::build_effective(f.spec, f.plan, p), omc::config_error);

  p = f.params;
  p.Delta(2) -= 1e-6;
  CHECK_THROWS_AS(omc::build_effective(f.spec, f.plan, p), omc::config_error);

  // a marginal drift is refused
  const auto spec1 = omc::rect_target(omc::grid_graph(1, 1), 1e-3, 4e-4, 0.0);
  const auto plan1 = bare_plan(1);
  const auto params1 = omc::uniform_params(plan1, 0.05, 1e-6, 0.0, 0.0);
  omc::ModelFlags undamped = omc::ideal_flags();
  CHECK_THROWS_AS(omc::effective_steady(spec1, plan1, params1, undamped),
                  omc::instability_error);
}
