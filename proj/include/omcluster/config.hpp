#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "omcluster/model_full.hpp"
#include "omcluster/sweep.hpp"
#include "omcluster/synthesis.hpp"
#include "omcluster/target.hpp"

namespace omc {

// Parsed run configuration. Rates are in units of the mechanical frequency,
// T in kelvin. kappa may be uniform (one entry) or per optical mode (M+1
// entries, reservoir first); delta_mag and gamma likewise uniform or
// per-auxiliary-mode / per-node. Lengths are checked once the mode count is
// known.
struct RunConfig {
  int rows = 1;
  int cols = 1;

  double J0 = 0.0;
  double J = 0.0;
  bool z_follows_r = true;
  double z = 0.0;

  Eigen::VectorXd kappa;      // >= 1 entries
  Eigen::VectorXd delta_mag;  // >= 1 entries
  DetuningPolicy policy = DetuningPolicy::mixed_sign;
  double drive_phase = 0.0;
  Eigen::VectorXd delta_omega;  // empty selects the policy default
  double rank_tol = 1e-10;
  double Delta0 = 1.0;

  Eigen::VectorXd gamma;  // >= 1 entries
  double T = 0.0;
  double omega0 = 2.0 * M_PI * 1e9;  // rad/s
  double eps_L0 = 1.0;

  double r = 0.0;
  bool phi0_auto = true;  // lock the squeezing phase to the plan
  double phi0 = 0.0;

  double t = 0.0;

  std::optional<SweepAxis> axis1;
  std::optional<SweepAxis> axis2;
  OptimizeBounds opt_bounds;
  int opt_coarse_n = 12;
  int opt_max_refine = 200;
  std::string csv_path;
};

// Parse the JSON text / file. Unknown keys anywhere are rejected.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Pipeline pieces from a parsed config.
TargetSpec config_target(const RunConfig& config);
SynthesisOptions config_synthesis(const RunConfig& config);
PhysicalParams config_params(const RunConfig& config, const CouplingPlan& plan);
// Uniform-rate scenario for sweeps and optimization; throws config_error
// when the config carries per-mode arrays or a pinned squeezing phase.
Scenario config_scenario(const RunConfig& config);

}  // namespace omc
