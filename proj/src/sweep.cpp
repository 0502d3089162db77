#include "omcluster/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "omcluster/errors.hpp"
#include "omcluster/metrics.hpp"
#include "omcluster/target.hpp"

namespace omc {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool known_axis(const std::string& name) {
  return name == "kappa" || name == "Delta" || name == "gamma" || name == "T";
}

void apply_axis(Scenario& s, const std::string& name, double value) {
  if (name == "kappa")
    s.kappa = value;
  else if (name == "Delta")
    s.delta_mag = value;
  else if (name == "gamma")
    s.gamma = value;
  else if (name == "T")
    s.T = value;
  else
    throw config_error("unknown sweep axis '" + name + "'");
}

}  // namespace

PointResult evaluate_point(const Scenario& scenario) {
  const TargetSpec spec =
      rect_target(scenario.graph, scenario.J0, scenario.J, scenario.r);
  const CouplingPlan plan =
      synthesize(spec, scenario.kappa, scenario.delta_mag, scenario.policy,
                 scenario.drive_phase);
  PhysicalParams params = uniform_params(plan, scenario.kappa, scenario.gamma,
                                         scenario.T, scenario.r);
  params.omega0 = scenario.omega0;
  const FullModel model = assemble(plan, params);

  PointResult out;
  out.adiabatic = adiabatic_report(plan, params);
  out.margin = stability_margin(model);
  out.stable = out.margin > 1e-12;
  if (!out.stable) {
    out.fidelity = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const Eigen::MatrixXd E = steady_covariance(model, scenario.t);
  out.fidelity = fidelity(E, target_covariance(spec), spec.n_nodes());
  out.nullifier_vars =
      nullifier_variances(E, nullifier_matrix(scenario.graph, spec.theta));
  return out;
}

Eigen::VectorXd axis_values(const SweepAxis& axis) {
  if (!known_axis(axis.name))
    throw config_error("unknown sweep axis '" + axis.name + "'");
  if (axis.n < 1) throw config_error("sweep axis needs at least one point");
  if (axis.min > axis.max)
    throw config_error("sweep axis range is reversed");
  if (axis.log && axis.min <= 0.0)
    throw config_error("log-spaced sweep axis requires positive bounds");
  Eigen::VectorXd v(axis.n);
  if (axis.n == 1) {
    v(0) = axis.min;
    return v;
  }
  if (axis.log) {
    const double lo = std::log(axis.min), hi = std::log(axis.max);
    for (int i = 0; i < axis.n; ++i)
      v(i) = std::exp(lo + (hi - lo) * i / (axis.n - 1));
  } else {
    for (int i = 0; i < axis.n; ++i)
      v(i) = axis.min + (axis.max - axis.min) * i / (axis.n - 1);
  }
  return v;
}

std::vector<SweepRecord> run_sweep(const Scenario& base, const SweepAxis& axis1,
                                   const SweepAxis& axis2) {
  if (axis1.name == axis2.name)
    throw config_error("sweep axes must differ");
  const Eigen::VectorXd v1 = axis_values(axis1);
  const Eigen::VectorXd v2 = axis_values(axis2);
  std::vector<SweepRecord> records;
  records.reserve(static_cast<size_t>(v1.size()) * v2.size());
  for (int i = 0; i < v1.size(); ++i)
    for (int j = 0; j < v2.size(); ++j) {
      Scenario s = base;
      apply_axis(s, axis1.name, v1(i));
      apply_axis(s, axis2.name, v2(j));
      SweepRecord rec;
      rec.a1 = v1(i);
      rec.a2 = v2(j);
      rec.result = evaluate_point(s);
      records.push_back(std::move(rec));
    }
  return records;
}

std::string sweep_csv(const std::vector<SweepRecord>& records,
                      const SweepAxis& axis1, const SweepAxis& axis2) {
  std::string out = axis1.name + "," + axis2.name +
                    ",fidelity,max_nullifier_var,min_nullifier_var,"
                    "stability_margin,adiabatic_coupling,adiabatic_response,"
                    "adiabatic_noise\n";
  for (const auto& rec : records) {
    out += fmt17(rec.a1) + "," + fmt17(rec.a2) + ",";
    if (rec.result.stable) {
      out += fmt17(rec.result.fidelity) + ",";
      out += fmt17(rec.result.nullifier_vars.maxCoeff()) + ",";
      out += fmt17(rec.result.nullifier_vars.minCoeff()) + ",";
      out += fmt17(rec.result.margin) + ",";
      out += fmt17(rec.result.adiabatic.ratio_coupling) + ",";
      out += fmt17(rec.result.adiabatic.ratio_response) + ",";
      out += fmt17(rec.result.adiabatic.ratio_noise) + "\n";
    } else {
      out += ",,," + fmt17(rec.result.margin) + ",,,\n";
    }
  }
  return out;
}

OptimizeResult optimize_chain(const Scenario& base, const OptimizeBounds& bounds,
                              int coarse_n, int max_refine) {
  if (bounds.J0_min <= 0.0 || bounds.J_min <= 0.0)
    throw config_error("optimize_chain: bounds must be positive");
  if (bounds.J0_min > bounds.J0_max || bounds.J_min > bounds.J_max)
    throw config_error("optimize_chain: bounds are reversed");
  if (coarse_n < 1)
    throw config_error("optimize_chain: coarse grid needs at least one point");
  if (max_refine < 0)
    throw config_error("optimize_chain: refinement budget must be >= 0");

  OptimizeResult best;
  best.fidelity = -1.0;
  int evals = 0;
  const auto score = [&](double j0, double j) -> double {
    Scenario s = base;
    s.J0 = j0;
    s.J = j;
    const PointResult p = evaluate_point(s);
    ++evals;
    const double f = p.stable ? p.fidelity : -1.0;
    if (f > best.fidelity) {
      best.fidelity = f;
      best.J0 = j0;
      best.J = j;
      best.margin = p.margin;
    }
    return f;
  };

  const auto grid = [&](double lo, double hi) {
    Eigen::VectorXd v(coarse_n);
    if (coarse_n == 1 || lo == hi)
      v.setConstant(lo);
    else
      for (int i = 0; i < coarse_n; ++i)
        v(i) = std::exp(std::log(lo) +
                        (std::log(hi) - std::log(lo)) * i / (coarse_n - 1));
    return v;
  };
  const Eigen::VectorXd g0 = grid(bounds.J0_min, bounds.J0_max);
  const Eigen::VectorXd g1 = grid(bounds.J_min, bounds.J_max);
  for (int i = 0; i < g0.size(); ++i)
    for (int j = 0; j < g1.size(); ++j) score(g0(i), g1(j));
  if (best.fidelity < 0.0)
    throw instability_error(
        "optimize_chain: every coarse grid point is unstable");

  // reflection-contraction simplex in log10(J0), log10(J), clamped to bounds
  using P = std::array<double, 2>;
  const P lo{std::log10(bounds.J0_min), std::log10(bounds.J_min)};
  const P hi{std::log10(bounds.J0_max), std::log10(bounds.J_max)};
  const auto clamp = [&](P x) {
    for (int d = 0; d < 2; ++d) x[d] = std::clamp(x[d], lo[d], hi[d]);
    return x;
  };
  const auto feval = [&](const P& x) {
    return score(std::pow(10.0, x[0]), std::pow(10.0, x[1]));
  };

  P step;
  for (int d = 0; d < 2; ++d)
    step[d] = (hi[d] - lo[d]) / std::max(coarse_n - 1, 1) / 2.0;
  if (step[0] == 0.0 && step[1] == 0.0) {
    best.evaluations = evals;
    return best;
  }

  std::array<P, 3> x;
  x[0] = {std::log10(best.J0), std::log10(best.J)};
  for (int v = 1; v <= 2; ++v) {
    x[v] = x[0];
    const int d = v - 1;
    x[v][d] += step[d];
    if (x[v][d] > hi[d]) x[v][d] = x[0][d] - step[d];
    x[v] = clamp(x[v]);
  }
  std::array<double, 3> f{best.fidelity, 0.0, 0.0};
  int used = 0;
  for (int v = 1; v <= 2 && used < max_refine; ++v, ++used) f[v] = feval(x[v]);

  while (used < max_refine) {
    std::array<int, 3> ord{0, 1, 2};
    std::sort(ord.begin(), ord.end(), [&](int a, int b) { return f[a] > f[b]; });
    const std::array<P, 3> xs{x[ord[0]], x[ord[1]], x[ord[2]]};
    const std::array<double, 3> fs{f[ord[0]], f[ord[1]], f[ord[2]]};
    x = xs;
    f = fs;

    const double extent =
        std::max(std::abs(x[0][0] - x[2][0]) + std::abs(x[0][1] - x[2][1]),
                 std::abs(x[0][0] - x[1][0]) + std::abs(x[0][1] - x[1][1]));
    if (extent < 1e-7) break;

    const P c{(x[0][0] + x[1][0]) / 2.0, (x[0][1] + x[1][1]) / 2.0};
    const P xr = clamp({2.0 * c[0] - x[2][0], 2.0 * c[1] - x[2][1]});
    const double fr = feval(xr);
    ++used;
    if (fr > f[1]) {
      x[2] = xr;
      f[2] = fr;
      continue;
    }
    if (used >= max_refine) break;
    const P xc = clamp({(c[0] + x[2][0]) / 2.0, (c[1] + x[2][1]) / 2.0});
    const double fc = feval(xc);
    ++used;
    if (fc > f[2]) {
      x[2] = xc;
      f[2] = fc;
      continue;
    }
    for (int v = 1; v <= 2 && used < max_refine; ++v, ++used) {
      x[v] = clamp({(x[0][0] + x[v][0]) / 2.0, (x[0][1] + x[v][1]) / 2.0});
      f[v] = feval(x[v]);
    }
  }

  best.evaluations = evals;
  return best;
}

}  // namespace omc
