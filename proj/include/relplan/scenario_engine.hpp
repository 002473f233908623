#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace relplan::scenario_engine {

enum class SystemKind { ConstituentSystem, ExternalStakeholder, Subsystem };

struct SystemDef {
    std::string id;
    SystemKind kind = SystemKind::ConstituentSystem;
    std::optional<std::string> parent; // Subsystem only; must name a ConstituentSystem
};

enum class ParamType { String, Int, Bool };

struct ParamDecl {
    std::string name;
    ParamType type;
};

struct EventDecl {
    std::string owner; // owning system id
    std::string name;
    std::vector<ParamDecl> params;

    std::string qualified_name() const { return owner + "." + name; }
};

using ArgValue = std::variant<std::string, std::int64_t, bool>;

struct ArgBinding {
    std::string name;
    ArgValue value;

    bool operator==(const ArgBinding&) const = default;
};

/// A concrete event occurrence: what gets injected, selected and traced.
struct EventInstance {
    std::optional<std::string> sender;
    std::string owner;
    std::string name;
    std::vector<ArgBinding> args; // normalized to declaration order

    bool operator==(const EventInstance&) const = default;
};

/// Structural event pattern. Matching is on (sender?, owner, name); literal
/// args, when present, must match by name and value; absent args match any.
struct EventPattern {
    std::optional<std::string> sender;
    std::string owner;
    std::string name;
    std::vector<ArgBinding> literal_args;

    bool matches(const EventInstance& e) const;

    /// Requires every declared param bound (checked at parse time for
    /// request steps and trigger bindings).
    EventInstance instantiate() const;
};

enum class BodyAction { Request, Receive };

struct BodyStep {
    BodyAction action;
    EventPattern pattern;
};

struct ScenarioRule {
    std::string id;
    EventPattern trigger;
    std::vector<BodyStep> body; // non-empty
};

enum class ProgramLevel { SoS, CsInternal };

struct ScenarioProgram {
    std::vector<SystemDef> systems;
    std::vector<EventDecl> events;
    std::vector<ScenarioRule> rules;
    ProgramLevel level = ProgramLevel::SoS;

    const SystemDef* find_system(std::string_view id) const;
    const EventDecl* find_event(std::string_view owner, std::string_view name) const;
};

/// Parses the line-oriented scenario DSL (see the project README for the
/// grammar). Throws ParseError with line/column; enforces declare-before-use
/// and full referential integrity.
ScenarioProgram parse_scenario_spec(std::string_view content);

/// Parses a standalone `[sender ->] owner.name[(args)]` expression and
/// validates it against the program's declarations.
EventPattern parse_event_pattern(std::string_view expr, const ScenarioProgram& program);

enum class SelectionStrategy { Deterministic, SeededRandom };

struct Activation {
    std::size_t rule_index;
    std::size_t pc; // index into the rule body
};

struct RunResult {
    std::vector<EventInstance> trace;
    bool budget_exhausted = false;
};

/// Execution state of one scenario program run. Rules whose trigger matches
/// an event become active; active rules advance when the selected event
/// matches their current body step; requests of active rules compete for
/// selection. Strictly single-threaded and deterministic for a fixed seed.
class ExecutionState {
public:
    explicit ExecutionState(const ScenarioProgram& program,
                            SelectionStrategy strategy = SelectionStrategy::Deterministic,
                            std::uint64_t seed = 0);

    /// Validates e against the declarations, appends it to the trace,
    /// advances matching waits and activates matching triggers.
    void inject(const EventInstance& e);

    /// Selects one requested event, or returns nullopt (quiescent: no active
    /// rule is positioned at a request) leaving the state unchanged.
    std::optional<EventInstance> step();

    /// Runs up to `budget` selections (budget > 0); stops early at
    /// quiescence. budget_exhausted reports a run that never went quiescent.
    RunResult run_to_quiescence(int budget);

    const std::vector<EventInstance>& trace() const { return trace_; }
    std::size_t step_count() const { return trace_.size(); }
    const std::vector<Activation>& activations() const { return activations_; }
    const ScenarioProgram& program() const { return *program_; }

    /// Events the active rules currently request, in (rule, pc) order.
    std::vector<EventInstance> pending_requests() const;

private:
    void apply(const EventInstance& e);

    const ScenarioProgram* program_;
    SelectionStrategy strategy_;
    std::mt19937_64 gen_;
    std::vector<Activation> activations_; // sorted by rule_index, unique
    std::vector<EventInstance> trace_;
};

/// One event per line: seq<TAB>sender<TAB>owner.name<TAB>key=value,...
/// seq is 1-based; a missing sender prints as "-".
std::string format_trace(const std::vector<EventInstance>& trace);

std::string format_event(const EventInstance& e);
std::string format_arg_value(const ArgValue& v);

} // namespace relplan::scenario_engine
