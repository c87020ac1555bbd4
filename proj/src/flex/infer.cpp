#include <algorithm>
#include <map>
#include <set>

#include "buml/flex/flex.hpp"
#include "buml/names.hpp"

namespace buml::flex {

namespace {

template <class T>
void push_unique(std::vector<T>& v, const T& x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

// Join of the observed (non-null) kinds.
struct KindJoin {
    bool any = false;
    bool ints = false, floats = false, strs = false, bools = false, enums = false;
    std::set<std::string> enum_names;

    void add(const Value& v) {
        switch (v.kind()) {
            case ValueKind::Null: return;
            case ValueKind::Int: ints = true; break;
            case ValueKind::Float: floats = true; break;
            case ValueKind::Str: strs = true; break;
            case ValueKind::Bool: bools = true; break;
            case ValueKind::Enum:
                enums = true;
                enum_names.insert(v.as_enum().enumeration);
                break;
        }
        any = true;
    }

    std::optional<std::string> single_enum() const {
        if (enums && !ints && !floats && !strs && !bools && enum_names.size() == 1) return *enum_names.begin();
        return std::nullopt;
    }

    std::string type(const std::set<std::string>& usable_enums) const {
        if (auto e = single_enum(); e && usable_enums.count(*e)) return *e;
        const int families = (ints || floats) + strs + bools + enums;
        if (families == 1 && !strs && !enums) return bools ? "bool" : (floats ? "float" : "int");
        return "str";
    }
};

}  // namespace

InferenceResult infer_class_model(const ObjectModel& objects) {
    InferenceResult result;
    ClassModel& m = result.model;
    m.name = objects.name;

    std::map<std::string, const ObjectDef*> by_id;
    for (const auto& o : objects.objects) by_id.emplace(o.id, &o);

    // Classes and their properties, in first-appearance order.
    std::vector<std::string> class_order;
    std::map<std::string, std::vector<std::string>> prop_order;
    std::map<std::string, std::vector<const ObjectDef*>> instances;
    for (const auto& o : objects.objects) {
        push_unique(class_order, o.classifier);
        instances[o.classifier].push_back(&o);
        for (const auto& s : o.slots) push_unique(prop_order[o.classifier], s.property);
    }

    // Enumerations observed anywhere, with literals in first-appearance order.
    std::vector<std::string> enum_order;
    std::map<std::string, std::vector<std::string>> enum_literals;
    for (const auto& o : objects.objects)
        for (const auto& s : o.slots)
            if (s.value.kind() == ValueKind::Enum) {
                push_unique(enum_order, s.value.as_enum().enumeration);
                push_unique(enum_literals[s.value.as_enum().enumeration], s.value.as_enum().literal);
            }
    std::set<std::string> taken(class_order.begin(), class_order.end());
    std::set<std::string> usable_enums;
    for (const auto& e : enum_order) {
        const auto& lits = enum_literals[e];
        const bool ok = is_identifier(e) && !primitive_from_name(e) && !taken.count(e) &&
                        std::all_of(lits.begin(), lits.end(), [](const auto& l) { return is_identifier(l); });
        if (ok) usable_enums.insert(e);
    }

    std::set<std::string> used_enums;
    for (const auto& cls : class_order) {
        ClassDef c;
        c.name = cls;
        for (const auto& prop : prop_order[cls]) {
            KindJoin join;
            bool optional = false;
            for (const ObjectDef* o : instances[cls]) {
                const AttributeLink* s = o->find_slot(prop);
                if (!s || s->value.is_null()) optional = true;
                if (s) join.add(s->value);
            }
            Property p{prop, join.type(usable_enums), false, optional, {}};
            if (!join.any)
                result.diagnostics.push_back(make_warning(codes::AllNull,
                                                          "'" + cls + "." + prop + "' is null everywhere; typed as str",
                                                          std::nullopt, cls + "." + prop));
            if (usable_enums.count(p.type)) used_enums.insert(p.type);
            c.properties.push_back(std::move(p));
        }
        m.classes.push_back(std::move(c));
    }
    for (const auto& e : enum_order)
        if (used_enums.count(e)) {
            m.enumerations.push_back(EnumDef{e, enum_literals[e], {}});
            taken.insert(e);
        }

    // Associations: one per link association name, over links between declared objects.
    std::vector<std::string> assoc_order;
    std::map<std::string, std::vector<const Link*>> links_of;
    for (const auto& l : objects.links) {
        if (!by_id.count(l.ends[0]) || !by_id.count(l.ends[1])) continue;
        push_unique(assoc_order, l.association);
        links_of[l.association].push_back(&l);
    }

    std::map<std::vector<std::string>, std::string> synthesized;  // sorted classifier set -> general
    auto end_class = [&](const std::string& assoc, int k, const std::vector<std::string>& seen) -> std::string {
        if (seen.size() == 1) return seen.front();
        std::vector<std::string> key = seen;
        std::sort(key.begin(), key.end());
        if (auto it = synthesized.find(key); it != synthesized.end()) return it->second;
        std::string name = assoc + "End" + std::to_string(k);
        for (int n = 2; taken.count(name) || primitive_from_name(name); ++n)
            name = assoc + "End" + std::to_string(k) + "_" + std::to_string(n);
        taken.insert(name);
        synthesized.emplace(key, name);
        m.classes.push_back(ClassDef{name, true, {}, {}});
        for (const auto& cls : seen) m.generalizations.push_back(Generalization{name, cls, {}});
        result.diagnostics.push_back(make_warning(codes::SyntheticGeneral,
                                                  "end " + std::to_string(k) + " of '" + assoc +
                                                      "' links several classes; introduced abstract class '" + name +
                                                      "'",
                                                  std::nullopt, name));
        return name;
    };

    for (const auto& assoc : assoc_order) {
        const auto& links = links_of[assoc];
        std::array<std::vector<std::string>, 2> seen;
        for (const Link* l : links)
            for (int k = 0; k < 2; ++k) push_unique(seen[k], by_id.at(l->ends[k])->classifier);

        Association a;
        a.name = assoc;
        for (int k = 0; k < 2; ++k) {
            // End k bounds how many end-k partners each object at the other end has.
            const int near = 1 - k;
            std::map<std::string, std::size_t> counts;
            for (const auto& cls : seen[near])
                for (const ObjectDef* o : instances[cls]) counts[o->id] = 0;
            for (const Link* l : links) ++counts[l->ends[near]];
            std::size_t lo = SIZE_MAX, hi = 0;
            for (const auto& [id, n] : counts) {
                lo = std::min(lo, n);
                hi = std::max(hi, n);
            }
            a.ends[k].target = end_class(assoc, k, seen[k]);
            a.ends[k].multiplicity =
                Multiplicity::range(static_cast<std::uint32_t>(lo),
                                    hi > 1 ? std::nullopt : std::optional<std::uint32_t>{1});
        }
        m.associations.push_back(std::move(a));
    }
    return result;
}

}  // namespace buml::flex
