#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "omcluster/graph.hpp"
#include "omcluster/model_effective.hpp"
#include "omcluster/model_full.hpp"
#include "omcluster/synthesis.hpp"

namespace omc {

// One operating point of the experiment: graph, chain rates, cavity
// parameters (uniform across optical modes), mechanical bath, reservoir
// squeezing r (which also sets the target squeezing), and the evaluation
// time of the steady covariance.
struct Scenario {
  ClusterGraph graph;
  double J0 = 3.4e-3;
  double J = 0.6e-3;
  double kappa = 0.05;
  double delta_mag = 30.0;
  DetuningPolicy policy = DetuningPolicy::mixed_sign;
  double drive_phase = 0.0;
  double gamma = 1e-8;
  double T = 0.0;  // kelvin
  double r = 0.0;
  double omega0 = 2.0 * M_PI * 1e9;  // rad/s, thermal occupations only
  double t = 0.0;
};

// Outcome of a single point: margin always, metrics only when stable
// (fidelity is NaN and nullifier_vars empty otherwise).
struct PointResult {
  double margin = 0.0;
  bool stable = false;
  double fidelity = 0.0;
  Eigen::VectorXd nullifier_vars;
  AdiabaticReport adiabatic;
};

// Re-synthesize, assemble, stability-gate, solve and score one scenario.
PointResult evaluate_point(const Scenario& scenario);

// Sweep axis over one scenario field: "kappa", "Delta" (detuning magnitude),
// "gamma" or "T"; n points from min to max, log- or linearly spaced.
struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int n = 0;
  bool log = true;
};

Eigen::VectorXd axis_values(const SweepAxis& axis);

struct SweepRecord {
  double a1 = 0.0;
  double a2 = 0.0;
  PointResult result;
};

// Grid sweep, axis1 outermost, deterministic order. The plan is
// re-synthesized at every point.
std::vector<SweepRecord> run_sweep(const Scenario& base, const SweepAxis& axis1,
                                   const SweepAxis& axis2);

// CSV with header
// <axis1>,<axis2>,fidelity,max_nullifier_var,min_nullifier_var,
// stability_margin,adiabatic_coupling,adiabatic_response,adiabatic_noise.
// Floats carry 17 significant digits; unstable rows leave every metric but
// the margin empty.
std::string sweep_csv(const std::vector<SweepRecord>& records,
                      const SweepAxis& axis1, const SweepAxis& axis2);

struct OptimizeBounds {
  double J0_min = 1e-4;
  double J0_max = 1e-2;
  double J_min = 1e-4;
  double J_max = 1e-2;
};

struct OptimizeResult {
  double J0 = 0.0;
  double J = 0.0;
  double fidelity = 0.0;
  double margin = 0.0;
  int evaluations = 0;
};

// Maximize full-model fidelity over (J0, J) inside the bounds at the fixed
// remaining scenario parameters: coarse log grid (coarse_n per side), then a
// reflection-contraction simplex in log space capped at max_refine
// evaluations. Deterministic. Throws instability_error when every coarse
// point is unstable.
OptimizeResult optimize_chain(const Scenario& base, const OptimizeBounds& bounds,
                              int coarse_n = 12, int max_refine = 200);

}  // namespace omc
