#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include "omcluster/model_effective.hpp"
#include "omcluster/sweep.hpp"
#include "omcluster/synthesis.hpp"
#include "omcluster/target.hpp"

namespace omc {

// Insertion-ordered JSON so identical inputs serialize byte-identically.
using json = nlohmann::ordered_json;

// Matrices serialize as {rows, cols, data} with data row-major; complex
// entries are [re, im] pairs.
json matrix_json(const Eigen::MatrixXd& m);
json matrix_json(const Eigen::MatrixXcd& m);
json vector_json(const Eigen::VectorXd& v);
json vector_json(const Eigen::VectorXcd& v);

json target_json(const TargetSpec& spec);
json plan_json(const CouplingPlan& plan);
json constraint_json(const ConstraintReport& report);
json adiabatic_json(const AdiabaticReport& report);
json point_json(const PointResult& result);

}  // namespace omc
