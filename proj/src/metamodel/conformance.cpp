#include <map>
#include <set>

#include "buml/metamodel/object_model.hpp"

namespace buml {

const AttributeLink* ObjectDef::find_slot(std::string_view property) const {
    for (const auto& s : slots)
        if (s.property == property) return &s;
    return nullptr;
}

const ObjectDef* ObjectModel::find_object(std::string_view id) const {
    for (const auto& o : objects)
        if (o.id == id) return &o;
    return nullptr;
}

bool value_fits(const ClassModel& model, const Property& property, const Value& value) {
    if (value.is_null()) return property.is_optional;
    if (auto prim = primitive_from_name(property.type)) {
        switch (*prim) {
            case PrimitiveKind::Int: return value.kind() == ValueKind::Int;
            case PrimitiveKind::Float: return value.kind() == ValueKind::Int || value.kind() == ValueKind::Float;
            case PrimitiveKind::Bool: return value.kind() == ValueKind::Bool;
            case PrimitiveKind::Str: return true;  // top of the kind lattice
        }
    }
    if (const EnumDef* e = model.find_enum(property.type)) {
        return value.kind() == ValueKind::Enum && value.as_enum().enumeration == e->name &&
               e->has_literal(value.as_enum().literal);
    }
    // Class-typed attributes have no scalar representation; only null fits.
    return false;
}

namespace {

class ConformanceChecker {
public:
    ConformanceChecker(const ObjectModel& objects, const ClassModel& model) : objects_(objects), model_(model) {}

    Diagnostics run() {
        check_objects();
        check_links();
        check_multiplicities();
        return std::move(out_);
    }

private:
    bool instance_of(const std::string& classifier, const std::string& cls) {
        if (!model_.find_class(classifier) || !model_.find_class(cls)) return false;
        auto key = std::make_pair(classifier, cls);
        if (auto it = subclass_cache_.find(key); it != subclass_cache_.end()) return it->second;
        const bool r = is_subclass_of(model_, classifier, cls);
        subclass_cache_.emplace(std::move(key), r);
        return r;
    }

    void check_objects() {
        std::set<std::string> ids;
        for (const ObjectDef& o : objects_.objects) {
            const auto& at = o.origin.span;
            if (!ids.insert(o.id).second) {
                out_.push_back(make_error(codes::DupObject, "object id '" + o.id + "' is declared more than once", at, o.id));
                continue;
            }
            const ClassDef* cls = model_.find_class(o.classifier);
            if (!cls) {
                out_.push_back(make_error(codes::UnknownClassifier,
                                          "object '" + o.id + "' has unknown classifier '" + o.classifier + "'", at, o.id));
                continue;
            }
            if (cls->is_abstract)
                out_.push_back(make_error(codes::AbstractInstance,
                                          "object '" + o.id + "' instantiates abstract class '" + o.classifier + "'", at,
                                          o.id));
            const auto props = all_properties(model_, o.classifier);
            std::set<std::string> seen;
            for (const AttributeLink& s : o.slots) {
                const std::string subject = o.id + "." + s.property;
                const auto& sat = s.origin.span ? s.origin.span : at;
                if (!seen.insert(s.property).second) {
                    out_.push_back(make_error(codes::DupSlot, "slot '" + subject + "' is set more than once", sat, subject));
                    continue;
                }
                const Property* prop = nullptr;
                for (const auto& p : props)
                    if (p.name == s.property) prop = &p;
                if (!prop) {
                    out_.push_back(make_error(codes::UnknownProperty,
                                              "class '" + o.classifier + "' has no property '" + s.property + "'", sat,
                                              subject));
                    continue;
                }
                if (!value_fits(model_, *prop, s.value))
                    out_.push_back(make_error(codes::SlotType,
                                              "slot '" + subject + "' holds " + std::string{value_kind_name(s.value.kind())} +
                                                  " value " + to_literal(s.value) + " but property type is '" +
                                                  prop->type + "'" + (s.value.is_null() ? " (not optional)" : ""),
                                              sat, subject));
            }
            for (const Property& p : props)
                if (!p.is_optional && !seen.count(p.name))
                    out_.push_back(make_error(codes::SlotMissing,
                                              "object '" + o.id + "' has no slot for required property '" + p.name + "'",
                                              at, o.id + "." + p.name));
        }
    }

    void check_links() {
        valid_.assign(objects_.links.size(), false);
        for (std::size_t li = 0; li < objects_.links.size(); ++li) {
            const Link& l = objects_.links[li];
            const auto& at = l.origin.span;
            const std::string subject = "link#" + std::to_string(li);
            const Association* a = model_.find_association(l.association);
            if (!a) {
                out_.push_back(make_error(codes::UnknownAssociation,
                                          "link " + l.ends[0] + " -- " + l.ends[1] + " uses unknown association '" +
                                              l.association + "'",
                                          at, subject));
                continue;
            }
            bool ok = true;
            for (int k = 0; k < 2; ++k) {
                const ObjectDef* o = objects_.find_object(l.ends[k]);
                if (!o) {
                    ok = false;
                    out_.push_back(make_error(codes::UnknownObject,
                                              "link of '" + l.association + "' references unknown object '" + l.ends[k] + "'",
                                              at, subject));
                } else if (!instance_of(o->classifier, a->ends[k].target)) {
                    ok = false;
                    out_.push_back(make_error(codes::LinkEndType,
                                              "object '" + o->id + "' of class '" + o->classifier + "' cannot play end " +
                                                  std::to_string(k) + " (" + a->ends[k].target + ") of '" + a->name + "'",
                                              at, subject));
                }
            }
            valid_[li] = ok;
        }
    }

    void check_multiplicities() {
        std::set<std::string> ids;
        for (const ObjectDef& o : objects_.objects) {
            if (!ids.insert(o.id).second || !model_.find_class(o.classifier)) continue;
            for (const Association& a : model_.associations) {
                for (int here = 0; here < 2; ++here) {
                    if (!instance_of(o.classifier, a.ends[here].target)) continue;
                    const int far = 1 - here;
                    std::size_t count = 0;
                    for (std::size_t li = 0; li < objects_.links.size(); ++li) {
                        const Link& l = objects_.links[li];
                        if (valid_[li] && l.association == a.name && l.ends[here] == o.id) ++count;
                    }
                    const Multiplicity& m = a.ends[far].multiplicity;
                    const std::string subject = o.id + "/" + a.name + "/" + a.ends[far].navigation_name();
                    if (count < m.lower)
                        out_.push_back(make_error(codes::MultLower,
                                                  "object '" + o.id + "' has " + std::to_string(count) + " '" +
                                                      a.ends[far].navigation_name() + "' link(s) via '" + a.name +
                                                      "', needs at least " + std::to_string(m.lower),
                                                  o.origin.span, subject));
                    else if (m.upper && count > *m.upper)
                        out_.push_back(make_error(codes::MultUpper,
                                                  "object '" + o.id + "' has " + std::to_string(count) + " '" +
                                                      a.ends[far].navigation_name() + "' link(s) via '" + a.name +
                                                      "', allows at most " + std::to_string(*m.upper),
                                                  o.origin.span, subject));
                }
            }
        }
    }

    const ObjectModel& objects_;
    const ClassModel& model_;
    Diagnostics out_;
    std::vector<bool> valid_;
    std::map<std::pair<std::string, std::string>, bool> subclass_cache_;
};

}  // namespace

Diagnostics check_conformance(const ObjectModel& objects, const ClassModel& model) {
    return ConformanceChecker{objects, model}.run();
}

}  // namespace buml
