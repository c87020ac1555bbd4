#include "buml/fsm/machine.hpp"

#include <algorithm>
#include <set>

#include "buml/names.hpp"
#include "buml/ocl/interpreter.hpp"
#include "buml/ocl/parser.hpp"
#include "syntax/line_lexer.hpp"
#include "syntax/literal.hpp"

namespace buml::fsm {

using syntax::Token;
using syntax::TokKind;

const State* StateMachine::find_state(std::string_view n) const {
    for (const auto& s : states)
        if (s.name == n) return &s;
    return nullptr;
}

bool StateMachine::has_event(std::string_view e) const {
    return std::find(events.begin(), events.end(), e) != events.end();
}

namespace {

class MachineParser {
public:
    explicit MachineParser(std::string_view file) : file_(file) {}

    ParseResult<StateMachine> run(std::string_view text) {
        int line_no = 0;
        for (std::string_view line : syntax::split_lines(text)) {
            ++line_no;
            parse_line(line, line_no);
        }
        if (!seen_machine_) error(1, 1, "missing 'machine <name>' declaration");
        ParseResult<StateMachine> r;
        if (!has_errors(diags_)) r.model = std::move(m_);
        r.diagnostics = std::move(diags_);
        return r;
    }

private:
    SourceSpan at(int line, int col) const { return SourceSpan{std::string{file_}, line, col}; }

    void error(int line, int col, std::string message) {
        diags_.push_back(make_error(codes::Syntax, std::move(message), at(line, col)));
    }

    void parse_line(std::string_view line, int n) {
        const auto toks = syntax::lex_line(line, {'#', false});
        if (toks.empty()) return;
        const Token& kw = toks[0];
        if (kw.kind != TokKind::Ident) {
            error(n, kw.column, kw.kind == TokKind::Bad ? kw.text : "expected a declaration keyword");
            return;
        }
        std::size_t i = 1;
        auto ident = [&](const char* what) -> std::optional<std::string> {
            if (i < toks.size() && toks[i].kind == TokKind::Ident) return toks[i++].text;
            const int col = i < toks.size() ? toks[i].column : static_cast<int>(line.size()) + 1;
            error(n, col, std::string{"expected "} + what);
            return std::nullopt;
        };
        auto finish = [&]() {
            if (i < toks.size()) {
                error(n, toks[i].column,
                      toks[i].kind == TokKind::Bad ? toks[i].text : "unexpected '" + toks[i].text + "'");
                return false;
            }
            return true;
        };

        if (kw.text == "machine") {
            auto name = ident("a machine name");
            if (!name || !finish()) return;
            if (seen_machine_) return error(n, kw.column, "duplicate 'machine' declaration");
            seen_machine_ = true;
            m_.name = *name;
        } else if (kw.text == "state") {
            auto name = ident("a state name");
            if (!name) return;
            State s{*name, std::nullopt, Origin{at(n, kw.column)}};
            if (i < toks.size() && toks[i].is_ident("action")) {
                ++i;
                auto action = ident("an action name");
                if (!action) return;
                s.action = *action;
            }
            if (!finish()) return;
            m_.states.push_back(std::move(s));
        } else if (kw.text == "initial") {
            auto name = ident("a state name");
            if (!name || !finish()) return;
            if (seen_initial_) return error(n, kw.column, "duplicate 'initial' declaration");
            seen_initial_ = true;
            m_.initial_state = *name;
        } else if (kw.text == "event") {
            auto name = ident("an event name");
            if (!name || !finish()) return;
            m_.events.push_back(*name);
        } else if (kw.text == "trans") {
            parse_transition(line, toks, n);
        } else {
            error(n, kw.column, "unknown declaration '" + kw.text + "'");
        }
    }

    void parse_transition(std::string_view line, const std::vector<Token>& toks, int n) {
        Transition t;
        t.origin.span = at(n, toks[0].column);
        std::size_t i = 1;
        auto expect_ident = [&](std::string& out, const char* what) {
            if (i < toks.size() && toks[i].kind == TokKind::Ident) {
                out = toks[i++].text;
                return true;
            }
            error(n, i < toks.size() ? toks[i].column : static_cast<int>(line.size()) + 1,
                  std::string{"expected "} + what);
            return false;
        };
        auto expect = [&](std::string_view punct, bool ident) {
            if (i < toks.size() && (ident ? toks[i].is_ident(punct) : toks[i].is_punct(punct))) {
                ++i;
                return true;
            }
            error(n, i < toks.size() ? toks[i].column : static_cast<int>(line.size()) + 1,
                  "expected '" + std::string{punct} + "'");
            return false;
        };
        if (!expect_ident(t.source, "a source state") || !expect("->", false) ||
            !expect_ident(t.target, "a target state") || !expect("on", true) || !expect_ident(t.event, "an event"))
            return;
        if (i < toks.size() && toks[i].is_ident("when")) {
            // The guard is everything after `when`; it has its own lexer.
            const int col = toks[i].column + 4;
            const std::string_view guard = line.substr(static_cast<std::size_t>(col - 1));
            auto parsed = ocl::parse_ocl_expression(guard, file_, n, col);
            if (!parsed.expr) {
                diags_.insert(diags_.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
                return;
            }
            t.guard = parsed.expr;
        } else if (i < toks.size()) {
            error(n, toks[i].column,
                  toks[i].kind == TokKind::Bad ? toks[i].text : "expected 'when' or end of line");
            return;
        }
        m_.transitions.push_back(std::move(t));
    }

    std::string_view file_;
    StateMachine m_;
    Diagnostics diags_;
    bool seen_machine_ = false;
    bool seen_initial_ = false;
};

std::string describe(const Transition& t) { return t.source + " -> " + t.target + " on " + t.event; }

}  // namespace

ParseResult<StateMachine> parse_machine(std::string_view text, std::string_view file) {
    return MachineParser{file}.run(text);
}

Diagnostics validate_machine(const StateMachine& m) {
    Diagnostics out;
    auto bad_name = [&](const std::string& name, const char* what, const Origin& origin) {
        if (is_identifier(name)) return;
        out.push_back(make_error(codes::BadIdentifier, std::string{what} + " name '" + name + "' is not an identifier",
                                 origin.span, name));
    };
    if (!m.name.empty()) bad_name(m.name, "machine", Origin{});

    std::set<std::string, std::less<>> states;
    for (const auto& s : m.states) {
        bad_name(s.name, "state", s.origin);
        if (s.action) bad_name(*s.action, "action", s.origin);
        if (!states.insert(s.name).second)
            out.push_back(make_error(codes::DupState, "state '" + s.name + "' is declared more than once",
                                     s.origin.span, s.name));
    }
    std::set<std::string, std::less<>> events;
    for (const auto& e : m.events) {
        bad_name(e, "event", Origin{});
        if (!events.insert(e).second)
            out.push_back(make_error(codes::DupEvent, "event '" + e + "' is declared more than once", std::nullopt, e));
    }
    if (m.initial_state.empty())
        out.push_back(make_error(codes::NoInitial, "machine has no initial state"));
    else if (!states.count(m.initial_state))
        out.push_back(make_error(codes::UnknownState, "initial state '" + m.initial_state + "' is not declared",
                                 std::nullopt, m.initial_state));

    std::set<std::pair<std::string, std::string>> guardless;
    for (const auto& t : m.transitions) {
        for (const std::string* s : {&t.source, &t.target})
            if (!states.count(*s))
                out.push_back(make_error(codes::UnknownState,
                                         "transition " + describe(t) + " uses undeclared state '" + *s + "'",
                                         t.origin.span, *s));
        if (!events.count(t.event))
            out.push_back(make_error(codes::UnknownEvent,
                                     "transition " + describe(t) + " uses undeclared event '" + t.event + "'",
                                     t.origin.span, t.event));
        const auto key = std::make_pair(t.source, t.event);
        if (guardless.count(key)) {
            if (!t.guard)
                out.push_back(make_error(codes::Nondeterministic,
                                         "state '" + t.source + "' has more than one unguarded transition on '" +
                                             t.event + "'",
                                         t.origin.span, t.source));
            else
                out.push_back(make_warning(codes::ShadowedTransition,
                                           "transition " + describe(t) +
                                               " follows an unguarded transition on the same event and never fires",
                                           t.origin.span, t.source));
        } else if (!t.guard) {
            guardless.insert(key);
        }
    }
    return out;
}

Session start_session(const StateMachine& m) { return Session{m.initial_state, {}, {}}; }

Session step(const StateMachine& m, const Session& session, std::string_view event, const Variables& payload) {
    if (!m.has_event(event)) throw Error(codes::UnknownEvent, "event '" + std::string{event} + "' is not declared");
    Session next = session;
    for (const auto& [k, v] : payload) next.variables[k] = v;

    static const ObjectModel kNoObjects;
    static const ClassModel kNoClasses;
    for (const auto& t : m.transitions) {
        if (t.source != next.current_state || t.event != event) continue;
        if (t.guard) {
            ocl::Binding env;
            for (const auto& [k, v] : next.variables) env.push(k, v);
            const ocl::EvalOutcome r = ocl::evaluate_expression(*t.guard, env, kNoObjects, kNoClasses);
            if (!r.ok()) throw Error(codes::GuardError, "guard of " + describe(t) + " failed: " + r.error);
            if (!r.value->is_scalar() || r.value->scalar().kind() != ValueKind::Bool)
                throw Error(codes::GuardError,
                            "guard of " + describe(t) + " evaluated to " + ocl::describe(*r.value) + ", not a boolean");
            if (!r.value->scalar().as_bool()) continue;
        }
        TraceEntry entry{std::string{event}, t.source, t.target, {}, true};
        if (const State* s = m.find_state(t.target); s && s->action) entry.actions_fired.push_back(*s->action);
        next.current_state = t.target;
        next.trace.push_back(std::move(entry));
        return next;
    }
    next.trace.push_back({std::string{event}, next.current_state, next.current_state, {}, false});
    return next;
}

ScenarioParseResult parse_scenario(std::string_view text, std::string_view file) {
    ScenarioParseResult r;
    int n = 0;
    for (std::string_view line : syntax::split_lines(text)) {
        ++n;
        const auto toks = syntax::lex_line(line, {'#', true});
        if (toks.empty()) continue;
        auto fail = [&](int col, std::string message) {
            r.diagnostics.push_back(make_error(codes::Syntax, std::move(message), SourceSpan{std::string{file}, n, col}));
        };
        if (toks[0].kind != TokKind::Ident) {
            fail(toks[0].column, toks[0].kind == TokKind::Bad ? toks[0].text : "expected an event name");
            continue;
        }
        ScenarioStep s{toks[0].text, {}, SourceSpan{std::string{file}, n, toks[0].column}};
        std::size_t i = 1;
        bool ok = true;
        while (ok && i < toks.size()) {
            if (toks[i].kind != TokKind::Ident || i + 1 >= toks.size() || !toks[i + 1].is_punct("=")) {
                fail(toks[i].column, toks[i].kind == TokKind::Bad ? toks[i].text : "expected 'name=value'");
                ok = false;
                break;
            }
            const std::string key = toks[i].text;
            const int key_col = toks[i].column;
            i += 2;
            const syntax::LiteralResult lit = syntax::parse_literal(toks, i);
            if (!lit.error.empty() || lit.bare_identifier) {
                fail(lit.column, lit.bare_identifier ? "bare name '" + lit.bare_identifier_text +
                                                           "' is not a value; quote strings"
                                                     : lit.error);
                ok = false;
            } else if (!s.payload.emplace(key, *lit.value).second) {
                fail(key_col, "payload key '" + key + "' appears twice");
                ok = false;
            }
        }
        if (ok) r.steps.push_back(std::move(s));
    }
    return r;
}

ScenarioResult run_scenario(const StateMachine& m, const std::vector<ScenarioStep>& steps) {
    ScenarioResult r{start_session(m), std::nullopt};
    for (const auto& s : steps) {
        try {
            r.session = step(m, r.session, s.event, s.payload);
        } catch (const Error& e) {
            r.failure = make_error(e.code(), e.what(), s.location, s.event);
            break;
        }
    }
    return r;
}

std::string format_trace_entry(const TraceEntry& e) {
    std::string s = e.event + " " + e.from + " -> " + e.to + " [";
    for (std::size_t i = 0; i < e.actions_fired.size(); ++i) s += (i ? ", " : "") + e.actions_fired[i];
    s += "]";
    if (!e.fired) s += " (no transition)";
    return s;
}

std::string format_trace(const std::vector<TraceEntry>& trace) {
    std::string out;
    for (const auto& e : trace) out += format_trace_entry(e) + "\n";
    return out;
}

}  // namespace buml::fsm
