#pragma once

// State machines with symbolic actions and OCL guards over session variables.
//
// Machine file (`.fsm`), one declaration per line, `#` full-line comments:
//
//   machine Greeter
//   state Idle
//   state Greeting action say_hello
//   initial Idle
//   event greet
//   trans Idle -> Greeting on greet when count < 3
//
// Scenario file: one `<event> [name=value ...]` per line; values use the
// object-model literal syntax.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "buml/metamodel/class_model.hpp"
#include "buml/ocl/ast.hpp"
#include "buml/syntax/plantuml.hpp"
#include "buml/value.hpp"

namespace buml::fsm {

struct State {
    std::string name;
    std::optional<std::string> action;
    Origin origin;
};

struct Transition {
    std::string source;
    std::string target;
    std::string event;
    ocl::ExprPtr guard;  // null: always enabled
    Origin origin;
};

struct StateMachine {
    std::string name;
    std::vector<State> states;
    std::vector<std::string> events;
    std::vector<Transition> transitions;
    std::string initial_state;

    const State* find_state(std::string_view n) const;
    bool has_event(std::string_view e) const;
};

using Variables = std::map<std::string, Value, std::less<>>;

struct TraceEntry {
    std::string event;
    std::string from;
    std::string to;
    std::vector<std::string> actions_fired;
    bool fired = false;  // false: no transition matched, state unchanged

    bool operator==(const TraceEntry&) const = default;
};

struct Session {
    std::string current_state;
    Variables variables;
    std::vector<TraceEntry> trace;

    bool operator==(const Session&) const = default;
};

/// Syntax only; run validate_machine for structural checks.
ParseResult<StateMachine> parse_machine(std::string_view text, std::string_view file = {});

/// Invariants plus the determinism approximation: at most one guardless
/// transition per (source, event). Transitions listed after a guardless one
/// for the same pair can never fire and draw a `shadowed-transition` warning.
Diagnostics validate_machine(const StateMachine& m);

Session start_session(const StateMachine& m);

/// Merges the payload, then fires the first enabled transition from the
/// current state in declaration order. Throws Error(unknown-event) or
/// Error(guard-error); the input session is never modified.
Session step(const StateMachine& m, const Session& session, std::string_view event, const Variables& payload = {});

struct ScenarioStep {
    std::string event;
    Variables payload;
    std::optional<SourceSpan> location;
};

struct ScenarioParseResult {
    std::vector<ScenarioStep> steps;
    Diagnostics diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

ScenarioParseResult parse_scenario(std::string_view text, std::string_view file = {});

struct ScenarioResult {
    Session session;                   // state after the last successful step
    std::optional<Diagnostic> failure;  // first failing step, if any
};

ScenarioResult run_scenario(const StateMachine& m, const std::vector<ScenarioStep>& steps);

/// `<event> <from> -> <to> [a1, a2]`, with ` (no transition)` appended for no-op steps.
std::string format_trace_entry(const TraceEntry& e);
std::string format_trace(const std::vector<TraceEntry>& trace);

}  // namespace buml::fsm
