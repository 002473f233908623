#pragma once

#include "relplan/feature_model.hpp"
#include "relplan/monrp_solver.hpp"
#include "relplan/scenario_engine.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace relplan::estimation {

/// Linear counting model turning the project artifacts into release-planning
/// input data. Value: value_unit per tagged usage scenario. Cost: alpha per
/// referenced constituent system, beta per scenario body step, gamma per
/// referenced subsystem. Manual overrides always win.
struct EstimationParams {
    double alpha = 5.0;
    double beta = 1.0;
    double gamma = 3.0;
    double value_unit = 1.0;
    std::map<std::string, double> cost_overrides; // feature id -> cost
    std::map<std::pair<std::string, std::string>, double>
        value_overrides; // (feature id, stakeholder id) -> value

    void validate() const; // throws std::invalid_argument
};

/// m-by-n matrix, rows in stakeholder order, columns in feature order:
/// value(f_i, s_j) = value_unit * |scenarios of f_i tagged s_j|.
std::vector<std::vector<double>>
derive_value_matrix(const std::vector<feature_model::FeatureSpec>& features,
                    const std::vector<feature_model::Stakeholder>& stakeholders,
                    const EstimationParams& params);

/// cost_i = alpha * |constituent systems referenced by the rules|
///        + beta  * sum of rule body lengths
///        + gamma * |subsystems referenced by the rules|.
/// External stakeholders never count. A feature needs a mapped program or a
/// cost override.
std::vector<double>
derive_cost_vector(const std::vector<feature_model::FeatureSpec>& features,
                   const std::map<std::string, const scenario_engine::ScenarioProgram*>& programs,
                   const EstimationParams& params);

/// Cost of a single program under the counting model (no overrides).
double program_cost(const scenario_engine::ScenarioProgram& program,
                    const EstimationParams& params);

/// Validating assembly into an immutable instance; feature and stakeholder
/// order is the declaration order of the inputs.
monrp::MonrpInstance build_instance(const std::vector<feature_model::Stakeholder>& stakeholders,
                                    const std::vector<feature_model::FeatureSpec>& features,
                                    const std::vector<std::vector<double>>& value_matrix,
                                    const std::vector<double>& cost_vector);

} // namespace relplan::estimation
