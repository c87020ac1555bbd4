#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "buml/metamodel/object_model.hpp"
#include "buml/ocl/ast.hpp"

namespace buml::ocl {

struct ObjectRef {
    std::string id;

    bool operator==(const ObjectRef&) const = default;
};

struct EvalValue;
using Collection = std::vector<EvalValue>;

/// Runtime value: a scalar, an object, or an ordered collection.
struct EvalValue {
    std::variant<Value, ObjectRef, Collection> data;

    EvalValue() = default;
    EvalValue(Value v) : data(std::move(v)) {}
    EvalValue(ObjectRef r) : data(std::move(r)) {}
    EvalValue(Collection c) : data(std::move(c)) {}

    bool is_scalar() const { return data.index() == 0; }
    bool is_object() const { return data.index() == 1; }
    bool is_collection() const { return data.index() == 2; }
    const Value& scalar() const { return std::get<Value>(data); }
    const ObjectRef& object() const { return std::get<ObjectRef>(data); }
    const Collection& collection() const { return std::get<Collection>(data); }

    bool operator==(const EvalValue&) const = default;
};

std::string describe(const EvalValue& v);

/// Variable scopes, innermost last. An iterator without a declared variable
/// is bound under the empty name; unresolved identifiers navigate from it,
/// or from `self` when no implicit iterator is in scope.
class Binding {
public:
    void push(std::string name, EvalValue value) { frames_.emplace_back(std::move(name), std::move(value)); }
    void pop() { frames_.pop_back(); }
    const EvalValue* lookup(std::string_view name) const;
    std::size_t depth() const { return frames_.size(); }

private:
    std::vector<std::pair<std::string, EvalValue>> frames_;
};

struct EvalOutcome {
    std::optional<EvalValue> value;  // empty on runtime error
    std::string error;

    bool ok() const { return value.has_value(); }
};

EvalOutcome evaluate_expression(const Expr& e, const Binding& env, const ObjectModel& objects,
                                const ClassModel& model);

enum class Verdict { True, False, Error };

std::string_view verdict_name(Verdict v);

struct InstanceVerdict {
    std::string object_id;
    Verdict verdict;
    std::string message;

    bool operator==(const InstanceVerdict&) const = default;
};

struct EvalResult {
    std::string constraint;
    std::vector<InstanceVerdict> per_instance;
    std::optional<std::string> error;  // constraint-level, e.g. unknown context class

    bool passed() const;
    bool operator==(const EvalResult&) const = default;
};

/// One verdict per instance of the context class or its subclasses, in
/// object declaration order.
EvalResult evaluate_constraint(const OclConstraint& c, const ObjectModel& objects, const ClassModel& model);

struct CheckReport {
    std::vector<EvalResult> results;

    bool passed() const;
    /// (constraint, object id) for every non-true verdict; object id is empty
    /// for constraint-level errors.
    std::vector<std::pair<std::string, std::string>> failures() const;
};

CheckReport check_all(const std::vector<OclConstraint>& constraints, const ObjectModel& objects,
                      const ClassModel& model);

}  // namespace buml::ocl
