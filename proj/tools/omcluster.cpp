#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "omcluster/config.hpp"
#include "omcluster/errors.hpp"
#include "omcluster/graph.hpp"
#include "omcluster/metrics.hpp"
#include "omcluster/model_effective.hpp"
#include "omcluster/model_full.hpp"
#include "omcluster/serialize.hpp"
#include "omcluster/sweep.hpp"
#include "omcluster/synthesis.hpp"
#include "omcluster/target.hpp"

namespace {

struct Pipeline {
  omc::RunConfig cfg;
  omc::ClusterGraph graph;
  omc::TargetSpec spec;
  omc::CouplingPlan plan;
  omc::PhysicalParams params;
};

Pipeline prepare(const std::string& config_path) {
  Pipeline p;
  p.cfg = omc::load_config(config_path);
  p.graph = omc::grid_graph(p.cfg.rows, p.cfg.cols);
  p.spec = omc::config_target(p.cfg);
  p.plan = omc::synthesize(p.spec, omc::config_synthesis(p.cfg));
  p.params = omc::config_params(p.cfg, p.plan);
  return p;
}

void emit(const omc::json& out) { std::cout << out.dump(2) << "\n"; }

int cmd_synthesize(const std::string& config_path) {
  Pipeline p = prepare(config_path);
  omc::json out;
  out["constraints"] = omc::constraint_json(omc::check_constraints(p.spec));
  out["plan"] = omc::plan_json(p.plan);
  out["adiabatic"] =
      omc::adiabatic_json(omc::adiabatic_report(p.plan, p.params));
  emit(out);
  return 0;
}

int cmd_steady(const std::string& config_path) {
  Pipeline p = prepare(config_path);
  omc::FullModel model = omc::assemble(p.plan, p.params);
  const double margin = omc::stability_margin(model);
  const Eigen::MatrixXd E = omc::steady_covariance(model, p.cfg.t);
  const Eigen::MatrixXd E_target = omc::target_covariance(p.spec);
  const int n = p.spec.n_nodes();
  const Eigen::VectorXd vars = omc::nullifier_variances(
      E, omc::nullifier_matrix(p.graph, p.spec.theta));
  const omc::PurityReport purity = omc::purity_check(E);
  omc::json out;
  out["stability_margin"] = margin;
  out["fidelity"] = omc::fidelity(E, E_target, n);
  out["max_nullifier_var"] = vars.maxCoeff();
  out["min_nullifier_var"] = vars.minCoeff();
  out["nullifier_vars"] = omc::vector_json(vars);
  out["purity"] = {{"det", purity.det},
                   {"min_symplectic", purity.min_symplectic},
                   {"physical", purity.physical}};
  out["adiabatic"] =
      omc::adiabatic_json(omc::adiabatic_report(p.plan, p.params));
  out["covariance"] = omc::matrix_json(E);
  emit(out);
  return 0;
}

int cmd_sweep(const std::string& config_path) {
  omc::RunConfig cfg = omc::load_config(config_path);
  if (!cfg.axis1 || !cfg.axis2)
    throw omc::config_error("sweep needs a sweep section with axis1 and axis2");
  omc::Scenario base = omc::config_scenario(cfg);
  const std::vector<omc::SweepRecord> records =
      omc::run_sweep(base, *cfg.axis1, *cfg.axis2);
  const std::string csv = omc::sweep_csv(records, *cfg.axis1, *cfg.axis2);
  if (cfg.csv_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(cfg.csv_path);
    if (!out) throw omc::error("cannot write output file: " + cfg.csv_path);
    out << csv;
  }
  return 0;
}

int cmd_optimize(const std::string& config_path) {
  omc::RunConfig cfg = omc::load_config(config_path);
  omc::Scenario base = omc::config_scenario(cfg);
  const omc::OptimizeResult res = omc::optimize_chain(
      base, cfg.opt_bounds, cfg.opt_coarse_n, cfg.opt_max_refine);
  omc::json out;
  out["J0"] = res.J0;
  out["J"] = res.J;
  out["fidelity"] = res.fidelity;
  out["margin"] = res.margin;
  out["evaluations"] = res.evaluations;
  emit(out);
  return 0;
}

int cmd_validate(const std::string& config_path) {
  Pipeline p = prepare(config_path);
  const omc::ConstraintReport constraints = omc::check_constraints(p.spec);
  const Eigen::MatrixXd E_target = omc::target_covariance(p.spec);
  const int n = p.spec.n_nodes();

  const Eigen::MatrixXd E_ideal =
      omc::effective_steady(p.spec, p.plan, p.params, omc::ideal_flags());
  const double ideal_fidelity = omc::fidelity(E_ideal, E_target, n);

  omc::FullModel model = omc::assemble(p.plan, p.params);
  const double margin = omc::stability_margin(model);
  const Eigen::MatrixXd E_full = omc::steady_covariance(model, p.cfg.t);
  const Eigen::MatrixXd E_eff =
      omc::effective_steady(p.spec, p.plan, p.params);
  const double deviation = (E_full - E_eff).norm() / E_full.norm();

  const omc::AdiabaticReport adiabatic =
      omc::adiabatic_report(p.plan, p.params);
  const bool ok = constraints.realizable && ideal_fidelity >= 1.0 - 1e-6;

  omc::json out;
  out["constraints"] = omc::constraint_json(constraints);
  out["ideal_fidelity"] = ideal_fidelity;
  out["stability_margin"] = margin;
  out["fidelity"] = omc::fidelity(E_full, E_target, n);
  out["full_vs_effective"] = deviation;
  out["adiabatic"] = omc::adiabatic_json(adiabatic);
  out["ok"] = ok;
  emit(out);
  return ok ? 0 : 1;
}

int cmd_dump_target(const std::string& config_path) {
  omc::RunConfig cfg = omc::load_config(config_path);
  const omc::ClusterGraph graph = omc::grid_graph(cfg.rows, cfg.cols);
  const omc::TargetSpec spec = omc::config_target(cfg);
  const omc::NullifierSet nullifiers =
      omc::nullifier_matrix(graph, spec.theta);
  omc::json out;
  out["target"] = omc::target_json(spec);
  out["constraints"] = omc::constraint_json(omc::check_constraints(spec));
  out["covariance"] = omc::matrix_json(omc::target_covariance(spec));
  out["nullifiers"] = omc::matrix_json(nullifiers.Q);
  const Eigen::VectorXd vacuum_vars =
      graph.adjacency.rowwise().sum().array() + 1.0;
  out["vacuum_nullifier_vars"] = omc::vector_json(vacuum_vars);
  emit(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "steady-state engine for dissipatively prepared mechanical cluster "
      "states"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("-c,--config", config_path, "JSON run configuration")
      ->required();
  CLI::App* sub_synthesize = app.add_subcommand(
      "synthesize", "couplings, detunings and offsets for the target");
  CLI::App* sub_steady = app.add_subcommand(
      "steady", "steady covariance and metrics at one operating point");
  CLI::App* sub_sweep =
      app.add_subcommand("sweep", "two-axis parameter sweep to CSV");
  CLI::App* sub_optimize =
      app.add_subcommand("optimize", "maximize fidelity over (J0, J)");
  CLI::App* sub_validate = app.add_subcommand(
      "validate", "ideal-oracle and full-vs-effective consistency checks");
  CLI::App* sub_dump_target = app.add_subcommand(
      "dump-target", "target covariance and nullifier matrix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "omcluster: config: " << e.what() << "\n";
    return 2;
  }

  try {
    if (sub_synthesize->parsed()) return cmd_synthesize(config_path);
    if (sub_steady->parsed()) return cmd_steady(config_path);
    if (sub_sweep->parsed()) return cmd_sweep(config_path);
    if (sub_optimize->parsed()) return cmd_optimize(config_path);
    if (sub_validate->parsed()) return cmd_validate(config_path);
    if (sub_dump_target->parsed()) return cmd_dump_target(config_path);
  } catch (const omc::config_error& e) {
    std::cerr << "omcluster: config: " << e.what() << "\n";
    return 2;
  } catch (const omc::instability_error& e) {
    std::cerr << "omcluster: instability: " << e.what() << "\n";
    return 3;
  } catch (const omc::constraint_error& e) {
    std::cerr << "omcluster: constraint: " << e.what() << "\n";
    return 4;
  } catch (const omc::numeric_error& e) {
    std::cerr << "omcluster: numeric: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "omcluster: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
