#include "omcluster/serialize.hpp"

namespace omc {

json matrix_json(const Eigen::MatrixXd& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      data.push_back({m(r, c).real(), m(r, c).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

json vector_json(const Eigen::VectorXd& v) {
  json data = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) data.push_back(v(i));
  return data;
}

json vector_json(const Eigen::VectorXcd& v) {
  json data = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    data.push_back({v(i).real(), v(i).imag()});
  return data;
}

json target_json(const TargetSpec& spec) {
  return {{"n_nodes", spec.n_nodes()},
          {"V", matrix_json(spec.V)},
          {"theta", vector_json(spec.theta)},
          {"phi_half", vector_json(spec.phi_half)},
          {"J0", spec.J0},
          {"J", spec.J},
          {"z", spec.z}};
}

json plan_json(const CouplingPlan& plan) {
  return {{"M", plan.M},
          {"g0", vector_json(plan.g0)},
          {"Gbar", matrix_json(plan.Gbar)},
          {"detunings", vector_json(plan.detunings)},
          {"D", vector_json(plan.D)},
          {"delta_omega", vector_json(plan.delta_omega)},
          {"policy", to_string(plan.mode_policy)},
          {"drive_phase", plan.drive_phase},
          {"bath_phase", plan.bath_phase}};
}

json constraint_json(const ConstraintReport& report) {
  return {{"phase_residual", report.phase_residual},
          {"anticommutator_residual", report.anticommutator_residual},
          {"realizable", report.realizable}};
}

json adiabatic_json(const AdiabaticReport& report) {
  return {{"ratio_coupling", report.ratio_coupling},
          {"ratio_response", report.ratio_response},
          {"ratio_noise", report.ratio_noise},
          {"valid", report.valid}};
}

json point_json(const PointResult& result) {
  json out = {{"stability_margin", result.margin}, {"stable", result.stable}};
  if (result.stable) {
    out["fidelity"] = result.fidelity;
    out["nullifier_vars"] = vector_json(result.nullifier_vars);
  } else {
    out["fidelity"] = nullptr;
    out["nullifier_vars"] = json::array();
  }
  out["adiabatic"] = adiabatic_json(result.adiabatic);
  return out;
}

}  // namespace omc
