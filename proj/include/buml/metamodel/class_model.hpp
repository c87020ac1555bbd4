#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "buml/diagnostic.hpp"

namespace buml {

/// Where an element was declared. Never takes part in structural equality.
struct Origin {
    std::optional<SourceSpan> span;

    friend bool operator==(const Origin&, const Origin&) { return true; }
};

enum class PrimitiveKind { Int, Float, Str, Bool };

std::optional<PrimitiveKind> primitive_from_name(std::string_view name);
std::string_view primitive_name(PrimitiveKind k);

struct Property {
    std::string name;
    std::string type;          // "int" | "float" | "str" | "bool" | class name | enum name
    bool is_id = false;
    bool is_optional = false;  // slot may be omitted or hold null
    Origin origin;

    bool operator==(const Property&) const = default;
};

struct ClassDef {
    std::string name;
    bool is_abstract = false;
    std::vector<Property> properties;
    Origin origin;

    const Property* find_property(std::string_view n) const;

    bool operator==(const ClassDef&) const = default;
};

struct EnumDef {
    std::string name;
    std::vector<std::string> literals;
    Origin origin;

    bool has_literal(std::string_view lit) const;

    bool operator==(const EnumDef&) const = default;
};

struct Multiplicity {
    std::uint32_t lower = 0;
    std::optional<std::uint32_t> upper;  // nullopt = unbounded

    static Multiplicity many() { return {0, std::nullopt}; }
    static Multiplicity exactly(std::uint32_t n) { return {n, n}; }
    static Multiplicity range(std::uint32_t lo, std::optional<std::uint32_t> hi) { return {lo, hi}; }

    /// Accepts `1`, `*`, `0..1`, `1..*`, `n..m`.
    static std::optional<Multiplicity> parse(std::string_view text);
    /// Canonical form: `n` when lower == upper, `*` for 0..*, else `lo..hi`.
    std::string to_string() const;

    bool is_valid() const { return !upper || (*upper >= 1 && lower <= *upper); }
    bool admits(std::size_t count) const { return count >= lower && (!upper || count <= *upper); }
    bool at_most_one() const { return upper && *upper == 1; }

    bool operator==(const Multiplicity&) const = default;
};

struct AssociationEnd {
    std::string target;                 // class name
    std::optional<std::string> role;
    Multiplicity multiplicity = Multiplicity::many();
    bool is_composite = false;

    /// Role name, or the target class name when no role is given.
    const std::string& navigation_name() const { return role ? *role : target; }

    bool operator==(const AssociationEnd&) const = default;
};

/// Binary association. For a link (a, b): each object at ends[0] sees its
/// ends[1] partners constrained by ends[1].multiplicity, and vice versa.
struct Association {
    std::string name;
    std::array<AssociationEnd, 2> ends;
    Origin origin;

    bool operator==(const Association&) const = default;
};

struct Generalization {
    std::string general;
    std::string specific;
    Origin origin;

    bool operator==(const Generalization&) const = default;
};

struct ClassModel {
    std::string name;
    std::vector<ClassDef> classes;
    std::vector<EnumDef> enumerations;
    std::vector<Association> associations;
    std::vector<Generalization> generalizations;

    const ClassDef* find_class(std::string_view n) const;
    const EnumDef* find_enum(std::string_view n) const;
    const Association* find_association(std::string_view n) const;

    bool operator==(const ClassModel&) const = default;
};

enum class TypeCategory { Primitive, Class, Enum, Unknown };

TypeCategory classify_type(const ClassModel& model, std::string_view type);

/// Well-formedness. Empty result iff every model invariant holds.
/// Ordered by declaration (source line when known), then code.
Diagnostics validate_class_model(const ClassModel& model);

/// Inherited properties first (general-most first), then the class's own.
/// Throws Error(unknown-class).
std::vector<Property> all_properties(const ClassModel& model, std::string_view class_name);

/// Reflexive-transitive generalization reachability. Throws Error(unknown-class).
bool is_subclass_of(const ClassModel& model, std::string_view sub, std::string_view super);

/// Direct generals of a class in generalization declaration order.
std::vector<std::string> direct_generals(const ClassModel& model, std::string_view class_name);

/// Fluent helper for building models in code.
class ClassModelBuilder {
public:
    explicit ClassModelBuilder(std::string model_name = {});

    ClassModelBuilder& add_class(std::string name, bool is_abstract = false);
    /// Adds a property to the most recently added class.
    ClassModelBuilder& attribute(std::string name, std::string type, bool is_id = false,
                                 bool is_optional = false);
    ClassModelBuilder& add_enum(std::string name, std::vector<std::string> literals);
    ClassModelBuilder& associate(std::string name, AssociationEnd first, AssociationEnd second);
    ClassModelBuilder& generalize(std::string general, std::string specific);

    const ClassModel& peek() const { return model_; }
    ClassModel build() &&;
    ClassModel build() const&;

private:
    ClassModel model_;
};

AssociationEnd assoc_end(std::string target, Multiplicity m = Multiplicity::many(),
                         std::optional<std::string> role = std::nullopt, bool composite = false);

}  // namespace buml
