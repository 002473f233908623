#include "relplan/tdss_bridge.hpp"

#include "relplan/errors.hpp"
#include "relplan/text.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace relplan::tdss {

using feature_model::ResolvedKeyword;
using scenario_engine::EventInstance;
using scenario_engine::ExecutionState;

std::string_view to_string(BindAction a)
{
    return a == BindAction::Trigger ? "trigger" : "receive";
}

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::FailUnbound: return "fail_unbound";
    case Verdict::FailNotObserved: return "fail_not_observed";
    case Verdict::FailBudget: return "fail_budget";
    }
    return "?";
}

std::vector<StepSkeleton> generate_step_skeletons(const feature_model::FeatureSpec& spec)
{
    std::vector<StepSkeleton> out;
    for (std::size_t si = 0; si < spec.scenarios.size(); ++si) {
        const auto& scenario = spec.scenarios[si];
        for (std::size_t ki = 0; ki < scenario.steps.size(); ++ki) {
            StepSkeleton s;
            s.feature_id = spec.id;
            s.scenario_name = scenario.name;
            s.scenario_index = si;
            s.step_index = ki;
            s.resolved_keyword = scenario.steps[ki].resolved_keyword;
            s.pattern = "^" + text::escape_regex(scenario.steps[ki].text) + "$";
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::string skeletons_to_text(const std::vector<StepSkeleton>& skeletons)
{
    std::string out;
    std::size_t last_scenario = static_cast<std::size_t>(-1);
    for (const auto& s : skeletons) {
        if (s.scenario_index != last_scenario) {
            out += "# scenario: " + s.scenario_name + "\n";
            last_scenario = s.scenario_index;
        }
        out += std::string(feature_model::to_string(s.resolved_keyword)) + "\t" + s.pattern + "\n";
    }
    return out;
}

std::vector<BindingEntry> parse_bindings_file(std::string_view content)
{
    std::vector<BindingEntry> entries;
    const std::vector<std::string> lines = text::split_lines(content);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        std::string_view line = lines[i];
        if (text::trim(line).empty() || text::trim(line).front() == '#')
            continue;
        std::vector<std::string> fields = text::split(line, '\t');
        if (fields.size() != 3)
            throw ParseError(line_no, "expected 3 tab-separated fields "
                                      "(pattern, trigger|receive, event expression)");
        BindingEntry entry;
        entry.pattern = fields[0];
        std::string_view action = text::trim(fields[1]);
        if (action == "trigger")
            entry.action = BindAction::Trigger;
        else if (action == "receive")
            entry.action = BindAction::Receive;
        else
            throw ParseError(line_no, "unknown action '" + std::string(action) +
                                          "' (expected trigger or receive)");
        entry.event_expr = std::string(text::trim(fields[2]));
        entry.line = line_no;
        if (entry.pattern.empty())
            throw ParseError(line_no, "empty pattern");
        for (const auto& existing : entries) {
            if (existing.pattern == entry.pattern)
                throw ParseError(line_no, "duplicate binding for pattern '" + entry.pattern + "'");
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

BindOutcome bind_steps(std::vector<StepSkeleton> skeletons,
                       const std::vector<BindingEntry>& entries,
                       const scenario_engine::ScenarioProgram& program)
{
    BindOutcome out;
    for (const auto& entry : entries) {
        scenario_engine::EventPattern pattern;
        try {
            pattern = scenario_engine::parse_event_pattern(entry.event_expr, program);
        } catch (const ParseError& e) {
            throw ParseError(entry.line, "in event expression '" + entry.event_expr +
                                             "': " + e.message());
        }
        if (entry.action == BindAction::Trigger) {
            // Triggers are injected, so every declared parameter must be bound.
            const auto* decl = program.find_event(pattern.owner, pattern.name);
            if (pattern.literal_args.size() != decl->params.size())
                throw ParseError(entry.line, "trigger event '" + decl->qualified_name() +
                                                 "' must bind all " +
                                                 std::to_string(decl->params.size()) +
                                                 " parameter(s)");
        }

        bool matched = false;
        for (auto& s : skeletons) {
            if (s.pattern != entry.pattern)
                continue;
            const bool when = s.resolved_keyword == ResolvedKeyword::When;
            if (entry.action == BindAction::Trigger && !when)
                throw ParseError(entry.line, "trigger bound to a Then step ('" + s.pattern + "')");
            if (entry.action == BindAction::Receive && when)
                throw ParseError(entry.line, "receive bound to a When step ('" + s.pattern + "')");
            s.binding = Binding{entry.action, pattern};
            matched = true;
        }
        if (!matched)
            out.unmatched_patterns.push_back(entry.pattern);
    }
    out.skeletons = std::move(skeletons);
    return out;
}

TestReport execute_test(const feature_model::FeatureSpec& spec,
                        const std::vector<StepSkeleton>& skeletons,
                        const scenario_engine::ScenarioProgram& program, int budget,
                        scenario_engine::SelectionStrategy strategy, std::uint64_t seed)
{
    if (budget <= 0)
        throw std::invalid_argument("budget must be positive");

    TestReport report;
    for (std::size_t si = 0; si < spec.scenarios.size(); ++si) {
        ScenarioResult result;
        result.feature_id = spec.id;
        result.scenario_name = spec.scenarios[si].name;
        result.scenario_index = si;
        result.verdict = Verdict::Pass;

        ExecutionState state(program, strategy, seed);
        std::size_t cursor = 0; // trace position up to which events are consumed
        int remaining = budget;

        for (const auto& s : skeletons) {
            if (s.scenario_index != si)
                continue;
            if (!s.binding) {
                result.verdict = Verdict::FailUnbound;
                result.failed_step = s.step_index;
                break;
            }
            if (s.binding->action == BindAction::Trigger) {
                state.inject(s.binding->event.instantiate());
                continue;
            }
            // Receive: consume events already selected but not yet matched,
            // then drive the engine until the bound event shows up.
            bool found = false;
            const auto& trace = state.trace();
            while (cursor < trace.size()) {
                bool m = s.binding->event.matches(trace[cursor]);
                ++cursor;
                if (m) {
                    found = true;
                    break;
                }
            }
            while (!found) {
                if (remaining == 0) {
                    result.verdict = Verdict::FailBudget;
                    result.failed_step = s.step_index;
                    break;
                }
                std::optional<EventInstance> selected = state.step();
                if (!selected) {
                    result.verdict = Verdict::FailNotObserved;
                    result.failed_step = s.step_index;
                    break;
                }
                --remaining;
                cursor = state.trace().size();
                found = s.binding->event.matches(*selected);
            }
            if (result.verdict != Verdict::Pass)
                break;
        }

        result.trace = state.trace();
        if (result.verdict == Verdict::Pass)
            ++report.passed;
        else
            ++report.failed;
        report.scenarios.push_back(std::move(result));
    }
    return report;
}

} // namespace relplan::tdss
