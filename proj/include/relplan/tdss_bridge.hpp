#pragma once

#include "relplan/feature_model.hpp"
#include "relplan/scenario_engine.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace relplan::tdss {

enum class BindAction { Trigger, Receive };

std::string_view to_string(BindAction a);

/// A manually supplied event for one generated step pattern. When-steps bind
/// Trigger (the event is injected), Then-steps bind Receive (the engine runs
/// until a matching event is selected).
struct Binding {
    BindAction action;
    scenario_engine::EventPattern event;
};

/// One generated test step: the step text turned into an anchored literal
/// regex, awaiting a binding.
struct StepSkeleton {
    std::string feature_id;
    std::string scenario_name;
    std::size_t scenario_index = 0;
    std::size_t step_index = 0; // within the scenario
    feature_model::ResolvedKeyword resolved_keyword = feature_model::ResolvedKeyword::When;
    std::string pattern; // ^escaped step text$
    std::optional<Binding> binding;
};

/// One skeleton per step, file order, bindings empty.
std::vector<StepSkeleton> generate_step_skeletons(const feature_model::FeatureSpec& spec);

/// .steps file body: one `keyword<TAB>pattern` line per step, scenarios
/// separated by `# scenario:` comment lines.
std::string skeletons_to_text(const std::vector<StepSkeleton>& skeletons);

/// One .bind line: `pattern<TAB>trigger|receive<TAB>event-expression`.
struct BindingEntry {
    std::string pattern;
    BindAction action;
    std::string event_expr;
    int line = 0;
};

std::vector<BindingEntry> parse_bindings_file(std::string_view content);

struct BindOutcome {
    std::vector<StepSkeleton> skeletons;
    std::vector<std::string> unmatched_patterns; // entries that bound nothing
};

/// Attaches bindings to every skeleton whose pattern equals the entry's
/// pattern. Throws ParseError (with the .bind line) on action/keyword
/// mismatch, undeclared events, or incomplete trigger arguments.
BindOutcome bind_steps(std::vector<StepSkeleton> skeletons,
                       const std::vector<BindingEntry>& entries,
                       const scenario_engine::ScenarioProgram& program);

enum class Verdict { Pass, FailUnbound, FailNotObserved, FailBudget };

std::string_view to_string(Verdict v);

struct ScenarioResult {
    std::string feature_id;
    std::string scenario_name;
    std::size_t scenario_index = 0;
    Verdict verdict = Verdict::Pass;
    std::optional<std::size_t> failed_step;
    std::vector<scenario_engine::EventInstance> trace;
};

struct TestReport {
    std::vector<ScenarioResult> scenarios;
    std::size_t passed = 0;
    std::size_t failed = 0;

    bool all_passed() const { return failed == 0; }
};

/// Runs every usage scenario against the program on a fresh execution state:
/// Trigger steps inject, Receive steps drive the engine until the bound event
/// is selected (intermediate unrelated events are permitted). `budget` caps
/// engine selections per scenario.
TestReport execute_test(const feature_model::FeatureSpec& spec,
                        const std::vector<StepSkeleton>& skeletons,
                        const scenario_engine::ScenarioProgram& program, int budget,
                        scenario_engine::SelectionStrategy strategy =
                            scenario_engine::SelectionStrategy::Deterministic,
                        std::uint64_t seed = 0);

} // namespace relplan::tdss
