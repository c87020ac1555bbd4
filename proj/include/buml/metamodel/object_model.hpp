#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "buml/metamodel/class_model.hpp"
#include "buml/value.hpp"

namespace buml {

struct AttributeLink {
    std::string property;
    Value value;
    Origin origin;

    bool operator==(const AttributeLink&) const = default;
};

struct ObjectDef {
    std::string id;
    std::string classifier;
    std::vector<AttributeLink> slots;
    Origin origin;

    const AttributeLink* find_slot(std::string_view property) const;

    bool operator==(const ObjectDef&) const = default;
};

/// ends[k] is the object playing association end k.
struct Link {
    std::string association;
    std::array<std::string, 2> ends;
    Origin origin;

    bool operator==(const Link&) const = default;
};

struct ObjectModel {
    std::string name;
    std::vector<ObjectDef> objects;
    std::vector<Link> links;

    const ObjectDef* find_object(std::string_view id) const;

    bool operator==(const ObjectModel&) const = default;
};

/// Value-to-type compatibility used by conformance. Kinds widen along
/// int < float < str, bool < str, enum < str; an enum value also fits its own
/// enumeration when the literal exists. Null fits only optional properties.
bool value_fits(const ClassModel& model, const Property& property, const Value& value);

/// Structural conformance of an object population against a class model.
/// Empty iff every object, slot and link is well-typed and every
/// multiplicity holds. Never throws; diagnostics accumulate.
Diagnostics check_conformance(const ObjectModel& objects, const ClassModel& model);

}  // namespace buml
