#pragma once

#include "relplan/estimation.hpp"
#include "relplan/feature_model.hpp"
#include "relplan/monrp_solver.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace relplan::cli {

inline constexpr std::string_view kConfigFileName = "relplan.conf";

/// Parsed relplan.conf: flat key/value entries grouped into sections.
/// See the README for the full format.
struct ProjectConfig {
    std::string name;
    std::vector<feature_model::Stakeholder> stakeholders;

    std::filesystem::path root;
    std::filesystem::path features_dir;
    std::filesystem::path scenarios_dir;
    std::filesystem::path bindings_dir;
    std::filesystem::path output_dir;

    estimation::EstimationParams estimation;
    monrp::SearchParams search;
    int test_budget = 1000;
};

/// Loads <root>/relplan.conf. Throws ConfigError on a missing file, unknown
/// sections or keys, malformed values, or invalid parameter combinations.
ProjectConfig load_project_config(const std::filesystem::path& root);

} // namespace relplan::cli
