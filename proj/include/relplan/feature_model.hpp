#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace relplan::feature_model {

enum class StepKeyword { When, Then, And };
enum class ResolvedKeyword { When, Then };

std::string_view to_string(StepKeyword k);
std::string_view to_string(ResolvedKeyword k);

/// One When/Then/And line of a usage scenario. And inherits the resolved
/// keyword of the nearest preceding When or Then.
struct UsageStep {
    StepKeyword keyword;
    std::string text;
    ResolvedKeyword resolved_keyword;

    bool operator==(const UsageStep&) const = default;
};

struct UsageScenario {
    std::string name;
    std::vector<UsageStep> steps;
    std::set<std::string> stakeholder_tags;

    bool operator==(const UsageScenario&) const = default;
};

/// One parsed .feature file. The id is a slug; it defaults to a slug of the
/// title and can be pinned with an @id:<slug> tag above the Feature line.
struct FeatureSpec {
    std::string id;
    std::string title;
    std::string description;
    std::vector<UsageScenario> scenarios;
    std::string source_path;

    bool operator==(const FeatureSpec&) const = default;
};

struct Stakeholder {
    std::string id;
    std::string display_name;
    double weight = 0.0;
};

/// Grammar: Feature, Scenario, When/Then/And, `@id:` / `@stakeholder:` tag
/// lines, `#` comments. Given and But are rejected. Throws ParseError with
/// a 1-based line number.
FeatureSpec parse_feature_file(std::string_view content, std::string source_path = "");

/// Canonical text form; re-parsing it yields a structurally equal spec.
std::string to_canonical_text(const FeatureSpec& spec);

enum class Severity { Error, Warning };

struct ValidationIssue {
    Severity severity;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool has_errors() const;
    std::size_t error_count() const;
    std::size_t warning_count() const;
};

/// Cross-artifact checks: duplicate feature ids, unknown stakeholder tags,
/// untagged scenarios (warning), stakeholder weight constraints.
ValidationReport validate_project_features(const std::vector<FeatureSpec>& specs,
                                           const std::vector<Stakeholder>& stakeholders);

/// |sum(weights) - 1| tolerance shared by validation and instance building.
inline constexpr double kWeightSumTolerance = 1e-9;

} // namespace relplan::feature_model
