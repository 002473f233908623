#include "relplan/scenario_engine.hpp"

#include "relplan/errors.hpp"
#include "relplan/rng.hpp"
#include "relplan/text.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

namespace relplan::scenario_engine {

namespace {

// ---------------------------------------------------------------------------
// Line tokenizer
// ---------------------------------------------------------------------------

enum class TokKind { Ident, Int, String, LParen, RParen, Comma, Dot, Arrow, Equals, Colon, LBrace, RBrace };

struct Token {
    TokKind kind;
    std::string value;
    int col; // 1-based
};

bool ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

std::vector<Token> tokenize_line(std::string_view line, int line_no)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        int col = static_cast<int>(i) + 1;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#')
            break; // trailing comment
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < line.size() && ident_char(line[j]))
                ++j;
            out.push_back({TokKind::Ident, std::string(line.substr(i, j - i)), col});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && i + 1 < line.size() && std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
            std::size_t j = i + 1;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j])))
                ++j;
            out.push_back({TokKind::Int, std::string(line.substr(i, j - i)), col});
            i = j;
            continue;
        }
        if (c == '"') {
            std::string value;
            std::size_t j = i + 1;
            bool closed = false;
            while (j < line.size()) {
                if (line[j] == '\\' && j + 1 < line.size() &&
                    (line[j + 1] == '"' || line[j + 1] == '\\')) {
                    value += line[j + 1];
                    j += 2;
                } else if (line[j] == '"') {
                    closed = true;
                    ++j;
                    break;
                } else {
                    value += line[j];
                    ++j;
                }
            }
            if (!closed)
                throw ParseError(line_no, col, "unterminated string literal");
            out.push_back({TokKind::String, std::move(value), col});
            i = j;
            continue;
        }
        if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
            out.push_back({TokKind::Arrow, "->", col});
            i += 2;
            continue;
        }
        TokKind kind;
        switch (c) {
        case '(': kind = TokKind::LParen; break;
        case ')': kind = TokKind::RParen; break;
        case ',': kind = TokKind::Comma; break;
        case '.': kind = TokKind::Dot; break;
        case '=': kind = TokKind::Equals; break;
        case ':': kind = TokKind::Colon; break;
        case '{': kind = TokKind::LBrace; break;
        case '}': kind = TokKind::RBrace; break;
        default:
            throw ParseError(line_no, col, std::string("unexpected character '") + c + "'");
        }
        out.push_back({kind, std::string(1, c), col});
        ++i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Recursive-descent helpers over one token line
// ---------------------------------------------------------------------------

struct Cursor {
    const std::vector<Token>& toks;
    std::size_t pos = 0;
    int line;

    bool done() const { return pos >= toks.size(); }
    const Token& peek() const
    {
        if (done())
            throw ParseError(line, "unexpected end of line");
        return toks[pos];
    }
    Token take(TokKind kind, std::string_view what)
    {
        if (done())
            throw ParseError(line, "unexpected end of line, expected " + std::string(what));
        const Token& t = toks[pos];
        if (t.kind != kind)
            throw ParseError(line, t.col, "expected " + std::string(what) + ", got '" + t.value + "'");
        ++pos;
        return t;
    }
    bool accept(TokKind kind)
    {
        if (!done() && toks[pos].kind == kind) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect_end() const
    {
        if (!done())
            throw ParseError(line, toks[pos].col, "unexpected trailing '" + toks[pos].value + "'");
    }
};

std::string_view param_type_name(ParamType t)
{
    switch (t) {
    case ParamType::String: return "string";
    case ParamType::Int: return "int";
    case ParamType::Bool: return "bool";
    }
    return "?";
}

bool value_has_type(const ArgValue& v, ParamType t)
{
    switch (t) {
    case ParamType::String: return std::holds_alternative<std::string>(v);
    case ParamType::Int: return std::holds_alternative<std::int64_t>(v);
    case ParamType::Bool: return std::holds_alternative<bool>(v);
    }
    return false;
}

std::vector<ArgBinding> parse_arg_list(Cursor& cur)
{
    std::vector<ArgBinding> args;
    cur.take(TokKind::LParen, "'('");
    if (cur.accept(TokKind::RParen))
        return args;
    while (true) {
        Token name = cur.take(TokKind::Ident, "argument name");
        cur.take(TokKind::Equals, "'='");
        const Token& vt = cur.peek();
        ArgValue value;
        if (vt.kind == TokKind::Int) {
            value = static_cast<std::int64_t>(text::parse_int(vt.value));
            ++cur.pos;
        } else if (vt.kind == TokKind::String) {
            value = vt.value;
            ++cur.pos;
        } else if (vt.kind == TokKind::Ident && (vt.value == "true" || vt.value == "false")) {
            value = vt.value == "true";
            ++cur.pos;
        } else {
            throw ParseError(cur.line, vt.col, "expected an int, string or bool literal");
        }
        for (const auto& existing : args) {
            if (existing.name == name.value)
                throw ParseError(cur.line, name.col, "duplicate argument '" + name.value + "'");
        }
        args.push_back({name.value, std::move(value)});
        if (cur.accept(TokKind::RParen))
            break;
        cur.take(TokKind::Comma, "',' or ')'");
    }
    return args;
}

struct RawPattern {
    EventPattern pattern;
    bool had_args = false; // parens present
    int col = 0;
};

/// `[sender ->] owner.name[(args)]`; args only when parens are present.
RawPattern parse_pattern_expr(Cursor& cur)
{
    RawPattern out;
    Token first = cur.take(TokKind::Ident, "system id");
    out.col = first.col;
    if (cur.accept(TokKind::Arrow)) {
        out.pattern.sender = first.value;
        Token owner = cur.take(TokKind::Ident, "event owner");
        cur.take(TokKind::Dot, "'.'");
        Token name = cur.take(TokKind::Ident, "event name");
        out.pattern.owner = owner.value;
        out.pattern.name = name.value;
    } else {
        cur.take(TokKind::Dot, "'.'");
        Token name = cur.take(TokKind::Ident, "event name");
        out.pattern.owner = first.value;
        out.pattern.name = name.value;
    }
    if (!cur.done() && cur.peek().kind == TokKind::LParen) {
        out.had_args = true;
        out.pattern.literal_args = parse_arg_list(cur);
    }
    return out;
}

/// Checks declarations, types the literal args and normalizes them to
/// declaration order. require_all_params is the request/injection contract.
void resolve_pattern(RawPattern& raw, const ScenarioProgram& program, int line,
                     bool require_all_params)
{
    EventPattern& p = raw.pattern;
    if (p.sender && program.find_system(*p.sender) == nullptr)
        throw ParseError(line, raw.col, "unknown system '" + *p.sender + "'");
    const EventDecl* decl = program.find_event(p.owner, p.name);
    if (decl == nullptr) {
        if (program.find_system(p.owner) == nullptr)
            throw ParseError(line, raw.col, "unknown system '" + p.owner + "'");
        throw ParseError(line, raw.col, "undeclared event '" + p.owner + "." + p.name + "'");
    }
    std::vector<ArgBinding> normalized;
    std::set<std::string> seen;
    for (const auto& param : decl->params) {
        auto it = std::find_if(p.literal_args.begin(), p.literal_args.end(),
                               [&](const ArgBinding& a) { return a.name == param.name; });
        if (it == p.literal_args.end()) {
            if (require_all_params)
                throw ParseError(line, raw.col, "event '" + decl->qualified_name() +
                                                    "' requires argument '" + param.name + "'");
            continue;
        }
        if (!value_has_type(it->value, param.type))
            throw ParseError(line, raw.col, "argument '" + param.name + "' of '" +
                                                decl->qualified_name() + "' must be " +
                                                std::string(param_type_name(param.type)));
        normalized.push_back(*it);
        seen.insert(param.name);
    }
    for (const auto& a : p.literal_args) {
        if (!seen.contains(a.name))
            throw ParseError(line, raw.col, "event '" + decl->qualified_name() +
                                                "' has no parameter '" + a.name + "'");
    }
    p.literal_args = std::move(normalized);
}

ParamType parse_param_type(const Token& t, int line)
{
    if (t.value == "string")
        return ParamType::String;
    if (t.value == "int")
        return ParamType::Int;
    if (t.value == "bool")
        return ParamType::Bool;
    throw ParseError(line, t.col, "unknown parameter type '" + t.value +
                                      "' (expected string, int or bool)");
}

} // namespace

// ---------------------------------------------------------------------------
// Program
// ---------------------------------------------------------------------------

const SystemDef* ScenarioProgram::find_system(std::string_view id) const
{
    for (const auto& s : systems) {
        if (s.id == id)
            return &s;
    }
    return nullptr;
}

const EventDecl* ScenarioProgram::find_event(std::string_view owner, std::string_view name) const
{
    for (const auto& e : events) {
        if (e.owner == owner && e.name == name)
            return &e;
    }
    return nullptr;
}

ScenarioProgram parse_scenario_spec(std::string_view content)
{
    ScenarioProgram program;
    // index into program.rules; pointers would dangle across push_back
    std::optional<std::size_t> open_rule;
    int open_rule_line = 0;

    const std::vector<std::string> lines = text::split_lines(content);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        std::vector<Token> toks = tokenize_line(lines[i], line_no);
        if (toks.empty())
            continue;
        Cursor cur{toks, 0, line_no};

        if (open_rule) {
            ScenarioRule& rule = program.rules[*open_rule];
            if (cur.peek().kind == TokKind::RBrace) {
                ++cur.pos;
                cur.expect_end();
                if (rule.body.empty())
                    throw ParseError(line_no, "scenario '" + rule.id + "' has an empty body");
                open_rule.reset();
                continue;
            }
            Token action = cur.take(TokKind::Ident, "'request', 'receive' or '}'");
            BodyAction act;
            if (action.value == "request")
                act = BodyAction::Request;
            else if (action.value == "receive")
                act = BodyAction::Receive;
            else
                throw ParseError(line_no, action.col,
                                 "expected 'request', 'receive' or '}', got '" + action.value + "'");
            RawPattern raw = parse_pattern_expr(cur);
            cur.expect_end();
            if (!raw.had_args)
                throw ParseError(line_no, raw.col, "body step needs an argument list, e.g. '" +
                                                       raw.pattern.owner + "." + raw.pattern.name +
                                                       "()'");
            resolve_pattern(raw, program, line_no, act == BodyAction::Request);
            rule.body.push_back({act, std::move(raw.pattern)});
            continue;
        }

        Token head = cur.take(TokKind::Ident, "'system', 'event' or 'scenario'");
        if (head.value == "system") {
            SystemDef def;
            def.id = cur.take(TokKind::Ident, "system id").value;
            if (program.find_system(def.id) != nullptr)
                throw ParseError(line_no, "duplicate system id '" + def.id + "'");
            if (!cur.done()) {
                Token kind = cur.take(TokKind::Ident, "'stakeholder' or 'subsystem'");
                if (kind.value == "stakeholder") {
                    def.kind = SystemKind::ExternalStakeholder;
                } else if (kind.value == "subsystem") {
                    Token of = cur.take(TokKind::Ident, "'of'");
                    if (of.value != "of")
                        throw ParseError(line_no, of.col, "expected 'of' after 'subsystem'");
                    Token parent = cur.take(TokKind::Ident, "parent system id");
                    const SystemDef* parent_def = program.find_system(parent.value);
                    if (parent_def == nullptr)
                        throw ParseError(line_no, parent.col, "unknown system '" + parent.value + "'");
                    if (parent_def->kind != SystemKind::ConstituentSystem)
                        throw ParseError(line_no, parent.col,
                                         "subsystem parent '" + parent.value +
                                             "' must be a constituent system");
                    def.kind = SystemKind::Subsystem;
                    def.parent = parent.value;
                } else {
                    throw ParseError(line_no, kind.col,
                                     "expected 'stakeholder' or 'subsystem of <id>'");
                }
            }
            cur.expect_end();
            program.systems.push_back(std::move(def));
        } else if (head.value == "event") {
            EventDecl decl;
            Token owner = cur.take(TokKind::Ident, "owner system id");
            if (program.find_system(owner.value) == nullptr)
                throw ParseError(line_no, owner.col, "unknown system '" + owner.value + "'");
            decl.owner = owner.value;
            cur.take(TokKind::Dot, "'.'");
            decl.name = cur.take(TokKind::Ident, "event name").value;
            cur.take(TokKind::LParen, "'('");
            if (!cur.accept(TokKind::RParen)) {
                while (true) {
                    Token pname = cur.take(TokKind::Ident, "parameter name");
                    cur.take(TokKind::Colon, "':'");
                    Token ptype = cur.take(TokKind::Ident, "parameter type");
                    for (const auto& p : decl.params) {
                        if (p.name == pname.value)
                            throw ParseError(line_no, pname.col,
                                             "duplicate parameter '" + pname.value + "'");
                    }
                    decl.params.push_back({pname.value, parse_param_type(ptype, line_no)});
                    if (cur.accept(TokKind::RParen))
                        break;
                    cur.take(TokKind::Comma, "',' or ')'");
                }
            }
            cur.expect_end();
            if (program.find_event(decl.owner, decl.name) != nullptr)
                throw ParseError(line_no, "duplicate event '" + decl.qualified_name() + "'");
            program.events.push_back(std::move(decl));
        } else if (head.value == "scenario") {
            ScenarioRule rule;
            rule.id = cur.take(TokKind::Ident, "scenario id").value;
            for (const auto& r : program.rules) {
                if (r.id == rule.id)
                    throw ParseError(line_no, "duplicate scenario id '" + rule.id + "'");
            }
            Token on = cur.take(TokKind::Ident, "'on'");
            if (on.value != "on")
                throw ParseError(line_no, on.col, "expected 'on' after the scenario id");
            RawPattern raw = parse_pattern_expr(cur);
            resolve_pattern(raw, program, line_no, false);
            rule.trigger = std::move(raw.pattern);
            cur.take(TokKind::LBrace, "'{'");
            cur.expect_end();
            program.rules.push_back(std::move(rule));
            open_rule = program.rules.size() - 1;
            open_rule_line = line_no;
        } else {
            throw ParseError(line_no, head.col,
                             "expected 'system', 'event' or 'scenario', got '" + head.value + "'");
        }
    }

    if (open_rule)
        throw ParseError(open_rule_line, "scenario '" + program.rules[*open_rule].id +
                                             "' is missing its closing '}'");
    if (program.rules.empty())
        throw ParseError(std::max(static_cast<int>(lines.size()), 1), "no scenario rules");
    return program;
}

EventPattern parse_event_pattern(std::string_view expr, const ScenarioProgram& program)
{
    std::vector<Token> toks = tokenize_line(expr, 1);
    if (toks.empty())
        throw ParseError(1, "empty event expression");
    Cursor cur{toks, 0, 1};
    RawPattern raw = parse_pattern_expr(cur);
    cur.expect_end();
    resolve_pattern(raw, program, 1, false);
    return raw.pattern;
}

// ---------------------------------------------------------------------------
// Matching and execution
// ---------------------------------------------------------------------------

bool EventPattern::matches(const EventInstance& e) const
{
    if (sender && (!e.sender || *e.sender != *sender))
        return false;
    if (owner != e.owner || name != e.name)
        return false;
    for (const auto& lit : literal_args) {
        auto it = std::find_if(e.args.begin(), e.args.end(),
                               [&](const ArgBinding& a) { return a.name == lit.name; });
        if (it == e.args.end() || !(it->value == lit.value))
            return false;
    }
    return true;
}

EventInstance EventPattern::instantiate() const
{
    return EventInstance{sender, owner, name, literal_args};
}

ExecutionState::ExecutionState(const ScenarioProgram& program, SelectionStrategy strategy,
                               std::uint64_t seed)
    : program_(&program), strategy_(strategy), gen_(seed)
{
}

void ExecutionState::inject(const EventInstance& e)
{
    const EventDecl* decl = program_->find_event(e.owner, e.name);
    if (decl == nullptr)
        throw std::invalid_argument("undeclared event '" + e.owner + "." + e.name + "'");
    if (e.sender && program_->find_system(*e.sender) == nullptr)
        throw std::invalid_argument("undeclared sender system '" + *e.sender + "'");
    if (e.args.size() != decl->params.size())
        throw std::invalid_argument("event '" + decl->qualified_name() + "' expects " +
                                    std::to_string(decl->params.size()) + " argument(s), got " +
                                    std::to_string(e.args.size()));
    EventInstance normalized = e;
    normalized.args.clear();
    for (const auto& param : decl->params) {
        auto it = std::find_if(e.args.begin(), e.args.end(),
                               [&](const ArgBinding& a) { return a.name == param.name; });
        if (it == e.args.end())
            throw std::invalid_argument("event '" + decl->qualified_name() +
                                        "' requires argument '" + param.name + "'");
        if (!value_has_type(it->value, param.type))
            throw std::invalid_argument("argument '" + param.name + "' of '" +
                                        decl->qualified_name() + "' must be " +
                                        std::string(param_type_name(param.type)));
        normalized.args.push_back(*it);
    }
    apply(normalized);
}

void ExecutionState::apply(const EventInstance& e)
{
    trace_.push_back(e);

    // Advance every active rule whose current step (request or receive)
    // matches, then drop the exhausted ones. Rules triggered by this very
    // event start at position 0 and do not also advance on it; an event
    // matching the trigger of an already-active rule leaves it untouched.
    for (auto& act : activations_) {
        const ScenarioRule& rule = program_->rules[act.rule_index];
        if (rule.body[act.pc].pattern.matches(e))
            ++act.pc;
    }
    std::erase_if(activations_, [&](const Activation& act) {
        return act.pc >= program_->rules[act.rule_index].body.size();
    });

    for (std::size_t r = 0; r < program_->rules.size(); ++r) {
        if (!program_->rules[r].trigger.matches(e))
            continue;
        bool active = std::any_of(activations_.begin(), activations_.end(),
                                  [&](const Activation& a) { return a.rule_index == r; });
        if (!active)
            activations_.push_back({r, 0});
    }
    std::sort(activations_.begin(), activations_.end(),
              [](const Activation& a, const Activation& b) { return a.rule_index < b.rule_index; });
}

std::optional<EventInstance> ExecutionState::step()
{
    struct Candidate {
        std::size_t rule_index;
        std::size_t pc;
        EventInstance event;
    };
    std::vector<Candidate> candidates;
    for (const auto& act : activations_) {
        const BodyStep& bs = program_->rules[act.rule_index].body[act.pc];
        if (bs.action == BodyAction::Request)
            candidates.push_back({act.rule_index, act.pc, bs.pattern.instantiate()});
    }
    if (candidates.empty())
        return std::nullopt;

    std::size_t pick = 0;
    if (strategy_ == SelectionStrategy::Deterministic) {
        for (std::size_t i = 1; i < candidates.size(); ++i) {
            if (std::pair(candidates[i].rule_index, candidates[i].pc) <
                std::pair(candidates[pick].rule_index, candidates[pick].pc))
                pick = i;
        }
    } else {
        pick = static_cast<std::size_t>(rng::below(gen_, candidates.size()));
    }
    EventInstance selected = std::move(candidates[pick].event);
    apply(selected);
    return selected;
}

RunResult ExecutionState::run_to_quiescence(int budget)
{
    if (budget <= 0)
        throw std::invalid_argument("budget must be positive");
    for (int i = 0; i < budget; ++i) {
        if (!step())
            return RunResult{trace_, false};
    }
    return RunResult{trace_, true};
}

std::vector<EventInstance> ExecutionState::pending_requests() const
{
    std::vector<EventInstance> out;
    for (const auto& act : activations_) {
        const BodyStep& bs = program_->rules[act.rule_index].body[act.pc];
        if (bs.action == BodyAction::Request)
            out.push_back(bs.pattern.instantiate());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Trace formatting
// ---------------------------------------------------------------------------

std::string format_arg_value(const ArgValue& v)
{
    if (const auto* s = std::get_if<std::string>(&v)) {
        std::string out = "\"";
        for (char c : *s) {
            if (c == '"' || c == '\\')
                out += '\\';
            out += c;
        }
        out += '"';
        return out;
    }
    if (const auto* i = std::get_if<std::int64_t>(&v))
        return std::to_string(*i);
    return std::get<bool>(v) ? "true" : "false";
}

std::string format_event(const EventInstance& e)
{
    std::string out = e.sender ? *e.sender : std::string("-");
    out += '\t';
    out += e.owner + "." + e.name;
    out += '\t';
    for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i > 0)
            out += ',';
        out += e.args[i].name + "=" + format_arg_value(e.args[i].value);
    }
    return out;
}

std::string format_trace(const std::vector<EventInstance>& trace)
{
    std::string out;
    for (std::size_t i = 0; i < trace.size(); ++i)
        out += std::to_string(i + 1) + "\t" + format_event(trace[i]) + "\n";
    return out;
}

} // namespace relplan::scenario_engine
