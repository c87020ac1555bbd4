#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace buml {

struct SourceSpan {
    std::string file;
    int line = 1;    // 1-based
    int column = 1;  // 1-based

    bool operator==(const SourceSpan&) const = default;
};

enum class Severity { Error, Warning };

std::string_view severity_name(Severity s);

/// A single finding. Checks never abort; they accumulate these.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;     // one of the codes below
    std::string message;
    std::optional<SourceSpan> location;
    std::string subject;  // element the finding is about ("p1", "p1.code", "link#2", ...)

    bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

Diagnostic make_error(std::string code, std::string message,
                      std::optional<SourceSpan> location = std::nullopt, std::string subject = {});
Diagnostic make_warning(std::string code, std::string message,
                        std::optional<SourceSpan> location = std::nullopt, std::string subject = {});

bool has_errors(std::span<const Diagnostic> diags);
std::size_t count_errors(std::span<const Diagnostic> diags);

/// `severity code file:line:col message`. Missing locations print as `file:0:0`.
std::string format_diagnostic(const Diagnostic& d, std::string_view fallback_file = "-");

/// Thrown by operations whose contract has a hard failure mode (unknown class,
/// duplicate generator id, ...). Carries a catalog code.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Diagnostic catalog.
namespace codes {
// lexical / syntactic
inline constexpr const char* Syntax = "syntax";
inline constexpr const char* UnsupportedConstruct = "unsupported-construct";
inline constexpr const char* Io = "io";
inline constexpr const char* InvalidModel = "invalid-model";

// class model well-formedness
inline constexpr const char* BadIdentifier = "bad-identifier";
inline constexpr const char* ReservedName = "reserved-name";
inline constexpr const char* DupName = "dup-name";
inline constexpr const char* DupProperty = "dup-property";
inline constexpr const char* UnknownType = "unknown-type";
inline constexpr const char* UnknownClass = "unknown-class";
inline constexpr const char* IdNonPrimitive = "id-non-primitive";
inline constexpr const char* IdOptional = "id-optional";
inline constexpr const char* EnumEmpty = "enum-empty";
inline constexpr const char* DupLiteral = "dup-literal";
inline constexpr const char* DupRole = "dup-role";
inline constexpr const char* MultiComposite = "multi-composite";
inline constexpr const char* BadMultiplicity = "bad-multiplicity";
inline constexpr const char* GenSelf = "gen-self";
inline constexpr const char* GenCycle = "gen-cycle";
inline constexpr const char* DupGeneralization = "dup-generalization";

// object model conformance
inline constexpr const char* DupObject = "dup-object";
inline constexpr const char* DupSlot = "dup-slot";
inline constexpr const char* UnknownClassifier = "unknown-classifier";
inline constexpr const char* AbstractInstance = "abstract-instance";
inline constexpr const char* UnknownProperty = "unknown-property";
inline constexpr const char* SlotType = "slot-type";
inline constexpr const char* SlotMissing = "slot-missing";
inline constexpr const char* UnknownAssociation = "unknown-association";
inline constexpr const char* UnknownObject = "unknown-object";
inline constexpr const char* LinkEndType = "link-end-type";
inline constexpr const char* MultLower = "mult-lower";
inline constexpr const char* MultUpper = "mult-upper";

// OCL
inline constexpr const char* DupConstraint = "dup-constraint";
inline constexpr const char* UnknownContext = "unknown-context";

// code generation
inline constexpr const char* DupGenerator = "dup-generator";
inline constexpr const char* NoSuchGenerator = "no-such-generator";
inline constexpr const char* GenUnsupported = "gen-unsupported";
inline constexpr const char* SyntheticKey = "synthetic-key";
inline constexpr const char* NameCollision = "name-collision";
inline constexpr const char* BadArtifactPath = "bad-artifact-path";

// state machines
inline constexpr const char* DupState = "dup-state";
inline constexpr const char* DupEvent = "dup-event";
inline constexpr const char* UnknownState = "unknown-state";
inline constexpr const char* NoInitial = "no-initial";
inline constexpr const char* UnknownEvent = "unknown-event";
inline constexpr const char* Nondeterministic = "nondeterministic";
inline constexpr const char* ShadowedTransition = "shadowed-transition";
inline constexpr const char* GuardError = "guard-error";

// flexible modeling
inline constexpr const char* AllNull = "all-null";
inline constexpr const char* SyntheticGeneral = "synthetic-general";
}  // namespace codes

}  // namespace buml
