#include "omcluster/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "omcluster/errors.hpp"
#include "omcluster/graph.hpp"

namespace omc {

namespace {

using njson = nlohmann::json;

void check_keys(const njson& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known)
      throw config_error("unknown key '" + item.key() + "' in " + where);
  }
}

const njson& require_object(const njson& root, const std::string& where,
                            const char* key) {
  if (!root.contains(key))
    throw config_error("missing required section '" + std::string(key) +
                       "' in " + where);
  const njson& obj = root.at(key);
  if (!obj.is_object())
    throw config_error(where + "." + key + " must be an object");
  return obj;
}

double get_number(const njson& obj, const std::string& where, const char* key) {
  if (!obj.contains(key))
    throw config_error("missing required key '" + std::string(key) + "' in " +
                       where);
  const njson& v = obj.at(key);
  if (!v.is_number())
    throw config_error(where + "." + key + " must be a number");
  return v.get<double>();
}

double get_number(const njson& obj, const std::string& where, const char* key,
                  double fallback) {
  return obj.contains(key) ? get_number(obj, where, key) : fallback;
}

int get_integer(const njson& obj, const std::string& where, const char* key) {
  if (!obj.contains(key))
    throw config_error("missing required key '" + std::string(key) + "' in " +
                       where);
  const njson& v = obj.at(key);
  if (!v.is_number_integer())
    throw config_error(where + "." + key + " must be an integer");
  return v.get<int>();
}

int get_integer(const njson& obj, const std::string& where, const char* key,
                int fallback) {
  return obj.contains(key) ? get_integer(obj, where, key) : fallback;
}

bool get_boolean(const njson& obj, const std::string& where, const char* key,
                 bool fallback) {
  if (!obj.contains(key)) return fallback;
  const njson& v = obj.at(key);
  if (!v.is_boolean())
    throw config_error(where + "." + key + " must be a boolean");
  return v.get<bool>();
}

std::string get_string(const njson& obj, const std::string& where,
                       const char* key) {
  if (!obj.contains(key))
    throw config_error("missing required key '" + std::string(key) + "' in " +
                       where);
  const njson& v = obj.at(key);
  if (!v.is_string())
    throw config_error(where + "." + key + " must be a string");
  return v.get<std::string>();
}

Eigen::VectorXd number_array(const njson& v, const std::string& label) {
  if (!v.is_array() || v.empty())
    throw config_error(label + " must be a non-empty array of numbers");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const auto& e : v) {
    if (!e.is_number())
      throw config_error(label + " must contain only numbers");
    out(i++) = e.get<double>();
  }
  return out;
}

// scalar broadcasts to one entry; arrays pass through
Eigen::VectorXd get_rate(const njson& obj, const std::string& where,
                         const char* key) {
  if (!obj.contains(key))
    throw config_error("missing required key '" + std::string(key) + "' in " +
                       where);
  const njson& v = obj.at(key);
  const std::string label = where + "." + key;
  Eigen::VectorXd out;
  if (v.is_number())
    out = Eigen::VectorXd::Constant(1, v.get<double>());
  else
    out = number_array(v, label);
  if ((out.array() <= 0.0).any())
    throw config_error(label + " entries must be positive");
  return out;
}

SweepAxis parse_axis(const njson& obj, const std::string& where) {
  if (!obj.is_object()) throw config_error(where + " must be an object");
  check_keys(obj, where, {"name", "min", "max", "n", "log"});
  SweepAxis axis;
  axis.name = get_string(obj, where, "name");
  axis.min = get_number(obj, where, "min");
  axis.max = get_number(obj, where, "max");
  axis.n = get_integer(obj, where, "n");
  axis.log = get_boolean(obj, where, "log", true);
  if (axis.n < 1) throw config_error(where + ".n must be at least 1");
  return axis;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  njson root;
  try {
    root = njson::parse(text);
  } catch (const njson::parse_error& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw config_error("config root must be an object");
  check_keys(root, "config",
             {"graph", "target", "cavity", "mechanics", "reservoir", "time",
              "sweep", "optimize", "output"});

  RunConfig cfg;

  const njson& graph = require_object(root, "config", "graph");
  check_keys(graph, "graph", {"rows", "cols"});
  cfg.rows = get_integer(graph, "graph", "rows");
  cfg.cols = get_integer(graph, "graph", "cols");
  if (cfg.rows < 1 || cfg.cols < 1)
    throw config_error("graph.rows and graph.cols must be at least 1");

  const njson& target = require_object(root, "config", "target");
  check_keys(target, "target", {"J0", "J", "z"});
  cfg.J0 = get_number(target, "target", "J0");
  cfg.J = get_number(target, "target", "J");
  if (cfg.J0 < 0.0 || cfg.J < 0.0)
    throw config_error("target.J0 and target.J must be >= 0");
  if (target.contains("z")) {
    const njson& z = target.at("z");
    if (z.is_string()) {
      if (z.get<std::string>() != "r")
        throw config_error("target.z must be a number or the string \"r\"");
      cfg.z_follows_r = true;
    } else if (z.is_number()) {
      cfg.z_follows_r = false;
      cfg.z = z.get<double>();
      if (cfg.z < 0.0) throw config_error("target.z must be >= 0");
    } else {
      throw config_error("target.z must be a number or the string \"r\"");
    }
  }

  const njson& cavity = require_object(root, "config", "cavity");
  check_keys(cavity, "cavity",
             {"kappa", "delta_mag", "policy", "drive_phase", "delta_omega",
              "rank_tol", "Delta0"});
  cfg.kappa = get_rate(cavity, "cavity", "kappa");
  cfg.delta_mag = get_rate(cavity, "cavity", "delta_mag");
  if (cavity.contains("policy"))
    cfg.policy = detuning_policy_from_string(get_string(cavity, "cavity", "policy"));
  cfg.drive_phase = get_number(cavity, "cavity", "drive_phase", 0.0);
  if (cavity.contains("delta_omega"))
    cfg.delta_omega = number_array(cavity.at("delta_omega"), "cavity.delta_omega");
  cfg.rank_tol = get_number(cavity, "cavity", "rank_tol", 1e-10);
  if (cfg.rank_tol <= 0.0)
    throw config_error("cavity.rank_tol must be positive");
  cfg.Delta0 = get_number(cavity, "cavity", "Delta0", 1.0);

  const njson& mech = require_object(root, "config", "mechanics");
  check_keys(mech, "mechanics",
             {"gamma", "T", "omega0_hz", "omega0_rad_per_s", "eps_L0"});
  cfg.gamma = get_rate(mech, "mechanics", "gamma");
  cfg.T = get_number(mech, "mechanics", "T", 0.0);
  if (cfg.T < 0.0) throw config_error("mechanics.T must be >= 0");
  if (mech.contains("omega0_hz") && mech.contains("omega0_rad_per_s"))
    throw config_error(
        "mechanics: give omega0_hz or omega0_rad_per_s, not both");
  if (mech.contains("omega0_rad_per_s"))
    cfg.omega0 = get_number(mech, "mechanics", "omega0_rad_per_s");
  else
    cfg.omega0 = 2.0 * M_PI * get_number(mech, "mechanics", "omega0_hz", 1e9);
  if (cfg.omega0 <= 0.0)
    throw config_error("mechanics: the mechanical frequency must be positive");
  cfg.eps_L0 = get_number(mech, "mechanics", "eps_L0", 1.0);
  if (cfg.eps_L0 <= 0.0) throw config_error("mechanics.eps_L0 must be positive");

  if (root.contains("reservoir")) {
    const njson& res = require_object(root, "config", "reservoir");
    check_keys(res, "reservoir", {"r", "phi0"});
    cfg.r = get_number(res, "reservoir", "r", 0.0);
    if (cfg.r < 0.0) throw config_error("reservoir.r must be >= 0");
    if (res.contains("phi0")) {
      const njson& phi = res.at("phi0");
      if (phi.is_string()) {
        if (phi.get<std::string>() != "auto")
          throw config_error("reservoir.phi0 must be a number or \"auto\"");
        cfg.phi0_auto = true;
      } else if (phi.is_number()) {
        cfg.phi0_auto = false;
        cfg.phi0 = phi.get<double>();
      } else {
        throw config_error("reservoir.phi0 must be a number or \"auto\"");
      }
    }
  }

  if (root.contains("time")) {
    const njson& t = root.at("time");
    if (!t.is_number()) throw config_error("time must be a number");
    cfg.t = t.get<double>();
  }

  if (root.contains("sweep")) {
    const njson& sweep = require_object(root, "config", "sweep");
    check_keys(sweep, "sweep", {"axis1", "axis2"});
    if (!sweep.contains("axis1") || !sweep.contains("axis2"))
      throw config_error("sweep needs axis1 and axis2");
    cfg.axis1 = parse_axis(sweep.at("axis1"), "sweep.axis1");
    cfg.axis2 = parse_axis(sweep.at("axis2"), "sweep.axis2");
  }

  if (root.contains("optimize")) {
    const njson& opt = require_object(root, "config", "optimize");
    check_keys(opt, "optimize",
               {"J0_min", "J0_max", "J_min", "J_max", "coarse_n", "max_refine"});
    cfg.opt_bounds.J0_min = get_number(opt, "optimize", "J0_min", 1e-4);
    cfg.opt_bounds.J0_max = get_number(opt, "optimize", "J0_max", 1e-2);
    cfg.opt_bounds.J_min = get_number(opt, "optimize", "J_min", 1e-4);
    cfg.opt_bounds.J_max = get_number(opt, "optimize", "J_max", 1e-2);
    cfg.opt_coarse_n = get_integer(opt, "optimize", "coarse_n", 12);
    cfg.opt_max_refine = get_integer(opt, "optimize", "max_refine", 200);
    if (cfg.opt_bounds.J0_min <= 0.0 || cfg.opt_bounds.J_min <= 0.0)
      throw config_error("optimize bounds must be positive");
    if (cfg.opt_bounds.J0_min > cfg.opt_bounds.J0_max ||
        cfg.opt_bounds.J_min > cfg.opt_bounds.J_max)
      throw config_error("optimize bounds are reversed");
    if (cfg.opt_coarse_n < 1)
      throw config_error("optimize.coarse_n must be at least 1");
    if (cfg.opt_max_refine < 0)
      throw config_error("optimize.max_refine must be >= 0");
  }

  if (root.contains("output")) {
    const njson& out = require_object(root, "config", "output");
    check_keys(out, "output", {"csv"});
    if (out.contains("csv")) {
      cfg.csv_path = get_string(out, "output", "csv");
      if (cfg.csv_path.empty())
        throw config_error("output.csv must be a non-empty path");
    }
  }

  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

TargetSpec config_target(const RunConfig& config) {
  const double z = config.z_follows_r ? config.r : config.z;
  return rect_target(grid_graph(config.rows, config.cols), config.J0, config.J,
                     z);
}

SynthesisOptions config_synthesis(const RunConfig& config) {
  SynthesisOptions options;
  options.policy = config.policy;
  options.drive_phase = config.drive_phase;
  options.rank_tol = config.rank_tol;
  options.delta_omega = config.delta_omega;
  if (config.kappa.size() == 1)
    options.kappa = config.kappa(0);
  else
    options.kappa_per_mode = config.kappa.tail(config.kappa.size() - 1);
  if (config.delta_mag.size() == 1)
    options.delta_mag = config.delta_mag(0);
  else
    options.delta_mag_per_mode = config.delta_mag;
  return options;
}

PhysicalParams config_params(const RunConfig& config, const CouplingPlan& plan) {
  const int N = static_cast<int>(plan.g0.size());
  const int M = plan.M;
  PhysicalParams params;
  if (config.kappa.size() == 1)
    params.kappa = Eigen::VectorXd::Constant(M + 1, config.kappa(0));
  else if (config.kappa.size() == M + 1)
    params.kappa = config.kappa;
  else
    throw config_error("cavity.kappa needs one entry or M+1 = " +
                       std::to_string(M + 1) + " entries, got " +
                       std::to_string(config.kappa.size()));
  params.Delta = Eigen::VectorXd(M + 1);
  params.Delta(0) = config.Delta0;
  params.Delta.tail(M) = plan.detunings;
  if (config.gamma.size() == 1)
    params.gamma = Eigen::VectorXd::Constant(N, config.gamma(0));
  else if (config.gamma.size() == N)
    params.gamma = config.gamma;
  else
    throw config_error("mechanics.gamma needs one entry or N = " +
                       std::to_string(N) + " entries, got " +
                       std::to_string(config.gamma.size()));
  params.delta_omega = plan.delta_omega;
  params.T = config.T;
  params.omega0 = config.omega0;
  params.eps_L0 = config.eps_L0;
  params.r = config.r;
  params.phi0 = config.phi0_auto ? plan.bath_phase : config.phi0;
  return params;
}

Scenario config_scenario(const RunConfig& config) {
  if (config.kappa.size() != 1 || config.delta_mag.size() != 1 ||
      config.gamma.size() != 1)
    throw config_error(
        "sweeps and optimization need uniform (scalar) kappa, delta_mag and "
        "gamma");
  if (!config.phi0_auto)
    throw config_error(
        "sweeps and optimization lock the squeezing phase to the plan; drop "
        "reservoir.phi0");
  if (config.delta_omega.size() > 0)
    throw config_error(
        "sweeps and optimization re-synthesize offsets; drop "
        "cavity.delta_omega");
  if (config.Delta0 != 1.0)
    throw config_error("sweeps and optimization require Delta0 = 1");
  if (config.eps_L0 != 1.0)
    throw config_error("sweeps and optimization require eps_L0 = 1");
  if (!config.z_follows_r && config.z != config.r)
    throw config_error(
        "sweeps and optimization score against the z = r target");

  Scenario s;
  s.graph = grid_graph(config.rows, config.cols);
  s.J0 = config.J0;
  s.J = config.J;
  s.kappa = config.kappa(0);
  s.delta_mag = config.delta_mag(0);
  s.policy = config.policy;
  s.drive_phase = config.drive_phase;
  s.gamma = config.gamma(0);
  s.T = config.T;
  s.r = config.r;
  s.omega0 = config.omega0;
  s.t = config.t;
  return s;
}

}  // namespace omc
