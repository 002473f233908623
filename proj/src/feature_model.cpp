#include "relplan/feature_model.hpp"

#include "relplan/errors.hpp"
#include "relplan/text.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace relplan::feature_model {

namespace {

constexpr std::string_view kFeaturePrefix = "Feature:";
constexpr std::string_view kScenarioPrefix = "Scenario:";
constexpr std::string_view kIdTag = "@id:";
constexpr std::string_view kStakeholderTag = "@stakeholder:";

bool keyword_at(std::string_view line, std::string_view word, std::string_view& rest)
{
    if (!line.starts_with(word))
        return false;
    std::string_view after = line.substr(word.size());
    if (!after.empty() && !std::isspace(static_cast<unsigned char>(after.front())))
        return false;
    rest = text::trim(after);
    return true;
}

} // namespace

std::string_view to_string(StepKeyword k)
{
    switch (k) {
    case StepKeyword::When: return "When";
    case StepKeyword::Then: return "Then";
    case StepKeyword::And: return "And";
    }
    return "?";
}

std::string_view to_string(ResolvedKeyword k)
{
    return k == ResolvedKeyword::When ? "When" : "Then";
}

FeatureSpec parse_feature_file(std::string_view content, std::string source_path)
{
    FeatureSpec spec;
    spec.source_path = std::move(source_path);

    bool feature_seen = false;
    std::string id_tag;
    std::vector<std::string> description_parts;
    std::set<std::string> pending_tags;
    int pending_tag_line = 0;
    UsageScenario* current = nullptr;

    const std::vector<std::string> lines = text::split_lines(content);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        std::string_view line = text::trim(lines[i]);
        if (line.empty() || line.front() == '#')
            continue;

        if (line.front() == '@') {
            if (line.starts_with(kIdTag)) {
                if (feature_seen)
                    throw ParseError(line_no, "@id tag must precede the Feature line");
                std::string value(text::trim(line.substr(kIdTag.size())));
                if (!text::is_slug(value))
                    throw ParseError(line_no, "invalid feature id '" + value +
                                                  "' (expected [a-z0-9_-]+)");
                id_tag = value;
            } else if (line.starts_with(kStakeholderTag)) {
                if (!feature_seen)
                    throw ParseError(line_no, "stakeholder tag before Feature line");
                std::string value(text::trim(line.substr(kStakeholderTag.size())));
                if (!text::is_slug(value))
                    throw ParseError(line_no, "invalid stakeholder id '" + value +
                                                  "' (expected [a-z0-9_-]+)");
                pending_tags.insert(value);
                pending_tag_line = line_no;
            } else {
                throw ParseError(line_no, "unknown tag '" + std::string(line) +
                                              "' (supported: @id:, @stakeholder:)");
            }
            continue;
        }

        std::string_view rest;
        if (keyword_at(line, kFeaturePrefix, rest)) {
            if (feature_seen)
                throw ParseError(line_no, "duplicate Feature line");
            if (rest.empty())
                throw ParseError(line_no, "feature title is empty");
            spec.title = std::string(rest);
            feature_seen = true;
            continue;
        }

        if (keyword_at(line, kScenarioPrefix, rest)) {
            if (!feature_seen)
                throw ParseError(line_no, "Scenario before Feature line");
            if (current != nullptr && current->steps.empty())
                throw ParseError(line_no, "scenario '" + current->name + "' has no steps");
            spec.scenarios.push_back(UsageScenario{std::string(rest), {}, pending_tags});
            pending_tags.clear();
            current = &spec.scenarios.back();
            continue;
        }

        StepKeyword kw;
        if (keyword_at(line, "When", rest))
            kw = StepKeyword::When;
        else if (keyword_at(line, "Then", rest))
            kw = StepKeyword::Then;
        else if (keyword_at(line, "And", rest))
            kw = StepKeyword::And;
        else if (keyword_at(line, "Given", rest) || keyword_at(line, "But", rest))
            throw ParseError(line_no, "unsupported keyword (only When, Then and And are allowed)");
        else {
            if (current != nullptr)
                throw ParseError(line_no, "expected a When/Then/And step, a tag line or 'Scenario:'");
            if (!feature_seen)
                throw ParseError(line_no, "missing Feature line");
            if (!pending_tags.empty())
                throw ParseError(line_no, "expected 'Scenario:' after tag line");
            description_parts.emplace_back(line);
            continue;
        }

        if (!feature_seen)
            throw ParseError(line_no, "missing Feature line");
        if (current == nullptr)
            throw ParseError(line_no, "step outside scenario");
        if (!pending_tags.empty())
            throw ParseError(line_no, "expected 'Scenario:' after tag line");
        if (rest.empty())
            throw ParseError(line_no, "step has no text");

        ResolvedKeyword resolved;
        if (current->steps.empty()) {
            if (kw == StepKeyword::And)
                throw ParseError(line_no, "And step has no preceding When or Then");
            if (kw == StepKeyword::Then)
                throw ParseError(line_no, "first step of a scenario must be When");
            resolved = ResolvedKeyword::When;
        } else if (kw == StepKeyword::And) {
            resolved = current->steps.back().resolved_keyword;
        } else {
            resolved = kw == StepKeyword::When ? ResolvedKeyword::When : ResolvedKeyword::Then;
        }
        current->steps.push_back(UsageStep{kw, std::string(rest), resolved});
    }

    const int eof_line = static_cast<int>(lines.size());
    if (!feature_seen)
        throw ParseError(std::max(eof_line, 1), "missing Feature line");
    if (!pending_tags.empty())
        throw ParseError(pending_tag_line, "tag line not followed by a Scenario");
    if (current != nullptr && current->steps.empty())
        throw ParseError(eof_line, "scenario '" + current->name + "' has no steps");
    if (spec.scenarios.empty())
        throw ParseError(eof_line, "feature has no scenarios");

    spec.description = text::normalize_ws(text::join(description_parts, " "));
    spec.id = !id_tag.empty() ? id_tag : text::slugify(spec.title);
    if (spec.id.empty())
        throw ParseError(1, "cannot derive a feature id from the title; add an @id: tag");
    return spec;
}

std::string to_canonical_text(const FeatureSpec& spec)
{
    std::string out;
    out += "@id:" + spec.id + "\n";
    out += "Feature: " + spec.title + "\n";
    if (!spec.description.empty())
        out += "  " + spec.description + "\n";
    for (const auto& scenario : spec.scenarios) {
        out += "\n";
        for (const auto& tag : scenario.stakeholder_tags)
            out += "  @stakeholder:" + tag + "\n";
        out += "  Scenario: " + scenario.name + "\n";
        for (const auto& step : scenario.steps)
            out += "    " + std::string(to_string(step.keyword)) + " " + step.text + "\n";
    }
    return out;
}

bool ValidationReport::has_errors() const
{
    return error_count() > 0;
}

std::size_t ValidationReport::error_count() const
{
    return static_cast<std::size_t>(std::count_if(issues.begin(), issues.end(),
        [](const ValidationIssue& i) { return i.severity == Severity::Error; }));
}

std::size_t ValidationReport::warning_count() const
{
    return issues.size() - error_count();
}

ValidationReport validate_project_features(const std::vector<FeatureSpec>& specs,
                                           const std::vector<Stakeholder>& stakeholders)
{
    ValidationReport report;
    auto error = [&](std::string msg) {
        report.issues.push_back({Severity::Error, std::move(msg)});
    };
    auto warning = [&](std::string msg) {
        report.issues.push_back({Severity::Warning, std::move(msg)});
    };

    std::set<std::string> stakeholder_ids;
    for (const auto& s : stakeholders) {
        if (!stakeholder_ids.insert(s.id).second)
            error("duplicate stakeholder id '" + s.id + "'");
        if (s.weight < 0.0 || s.weight > 1.0)
            error("stakeholder '" + s.id + "' weight " + text::format_double(s.weight) +
                  " outside [0, 1]");
    }
    double sum = 0.0;
    for (const auto& s : stakeholders)
        sum += s.weight;
    if (std::abs(sum - 1.0) > kWeightSumTolerance)
        error("stakeholder weights sum to " + text::format_double(sum) + ", expected 1");

    std::map<std::string, int> id_count;
    for (const auto& spec : specs)
        ++id_count[spec.id];
    for (const auto& [id, count] : id_count) {
        if (count > 1)
            error("duplicate feature id '" + id + "' (" + std::to_string(count) + " files)");
    }

    for (const auto& spec : specs) {
        for (const auto& scenario : spec.scenarios) {
            for (const auto& tag : scenario.stakeholder_tags) {
                if (!stakeholder_ids.contains(tag))
                    error("unknown stakeholder '" + tag + "' in feature '" + spec.id +
                          "', scenario '" + scenario.name + "'");
            }
            if (scenario.stakeholder_tags.empty())
                warning("feature '" + spec.id + "', scenario '" + scenario.name +
                        "' has no stakeholder tags and contributes no value");
        }
    }
    return report;
}

} // namespace relplan::feature_model
