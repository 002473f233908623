#include "relplan/estimation.hpp"

#include <set>
#include <stdexcept>

namespace relplan::estimation {

using feature_model::FeatureSpec;
using feature_model::Stakeholder;
using scenario_engine::ScenarioProgram;
using scenario_engine::SystemKind;

void EstimationParams::validate() const
{
    if (alpha < 0.0 || beta < 0.0 || gamma < 0.0)
        throw std::invalid_argument("estimation cost factors must be >= 0");
    if (value_unit <= 0.0)
        throw std::invalid_argument("value_unit must be > 0");
    for (const auto& [id, cost] : cost_overrides) {
        if (cost < 0.0)
            throw std::invalid_argument("cost override for '" + id + "' must be >= 0");
    }
    for (const auto& [key, value] : value_overrides) {
        if (value < 0.0)
            throw std::invalid_argument("value override for ('" + key.first + "', '" +
                                        key.second + "') must be >= 0");
    }
}

std::vector<std::vector<double>>
derive_value_matrix(const std::vector<FeatureSpec>& features,
                    const std::vector<Stakeholder>& stakeholders,
                    const EstimationParams& params)
{
    params.validate();
    std::set<std::string> feature_ids;
    for (const auto& f : features)
        feature_ids.insert(f.id);
    std::set<std::string> stakeholder_ids;
    for (const auto& s : stakeholders)
        stakeholder_ids.insert(s.id);
    for (const auto& [key, value] : params.value_overrides) {
        (void)value;
        if (!feature_ids.contains(key.first))
            throw std::invalid_argument("value override names unknown feature '" + key.first + "'");
        if (!stakeholder_ids.contains(key.second))
            throw std::invalid_argument("value override names unknown stakeholder '" +
                                        key.second + "'");
    }

    std::vector<std::vector<double>> matrix(stakeholders.size(),
                                            std::vector<double>(features.size(), 0.0));
    for (std::size_t j = 0; j < stakeholders.size(); ++j) {
        for (std::size_t i = 0; i < features.size(); ++i) {
            auto it = params.value_overrides.find({features[i].id, stakeholders[j].id});
            if (it != params.value_overrides.end()) {
                matrix[j][i] = it->second;
                continue;
            }
            std::size_t tagged = 0;
            for (const auto& scenario : features[i].scenarios) {
                if (scenario.stakeholder_tags.contains(stakeholders[j].id))
                    ++tagged;
            }
            matrix[j][i] = params.value_unit * static_cast<double>(tagged);
        }
    }
    return matrix;
}

double program_cost(const ScenarioProgram& program, const EstimationParams& params)
{
    std::set<std::string> referenced;
    auto note = [&](const scenario_engine::EventPattern& p) {
        if (p.sender)
            referenced.insert(*p.sender);
        referenced.insert(p.owner);
    };
    std::size_t body_steps = 0;
    for (const auto& rule : program.rules) {
        note(rule.trigger);
        for (const auto& step : rule.body)
            note(step.pattern);
        body_steps += rule.body.size();
    }
    std::size_t constituents = 0;
    std::size_t subsystems = 0;
    for (const auto& id : referenced) {
        const auto* def = program.find_system(id);
        if (def == nullptr)
            continue; // unreachable for parsed programs
        if (def->kind == SystemKind::ConstituentSystem)
            ++constituents;
        else if (def->kind == SystemKind::Subsystem)
            ++subsystems;
    }
    return params.alpha * static_cast<double>(constituents) +
           params.beta * static_cast<double>(body_steps) +
           params.gamma * static_cast<double>(subsystems);
}

std::vector<double>
derive_cost_vector(const std::vector<FeatureSpec>& features,
                   const std::map<std::string, const ScenarioProgram*>& programs,
                   const EstimationParams& params)
{
    params.validate();
    std::vector<double> costs;
    costs.reserve(features.size());
    for (const auto& feature : features) {
        auto ov = params.cost_overrides.find(feature.id);
        if (ov != params.cost_overrides.end()) {
            costs.push_back(ov->second);
            continue;
        }
        auto it = programs.find(feature.id);
        if (it == programs.end() || it->second == nullptr)
            throw std::invalid_argument("feature '" + feature.id +
                                        "' has no scenario program and no cost override");
        costs.push_back(program_cost(*it->second, params));
    }
    return costs;
}

monrp::MonrpInstance build_instance(const std::vector<Stakeholder>& stakeholders,
                                    const std::vector<FeatureSpec>& features,
                                    const std::vector<std::vector<double>>& value_matrix,
                                    const std::vector<double>& cost_vector)
{
    std::vector<std::string> stakeholder_ids;
    std::vector<double> weights;
    for (const auto& s : stakeholders) {
        stakeholder_ids.push_back(s.id);
        weights.push_back(s.weight);
    }
    std::vector<std::string> feature_ids;
    for (const auto& f : features)
        feature_ids.push_back(f.id);
    return monrp::MonrpInstance(std::move(stakeholder_ids), std::move(weights),
                                std::move(feature_ids), cost_vector, value_matrix);
}

} // namespace relplan::estimation
