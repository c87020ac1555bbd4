#include "buml/metamodel/class_model.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "buml/names.hpp"

namespace buml {

std::optional<PrimitiveKind> primitive_from_name(std::string_view name) {
    if (name == "int") return PrimitiveKind::Int;
    if (name == "float") return PrimitiveKind::Float;
    if (name == "str") return PrimitiveKind::Str;
    if (name == "bool") return PrimitiveKind::Bool;
    return std::nullopt;
}

std::string_view primitive_name(PrimitiveKind k) {
    switch (k) {
        case PrimitiveKind::Int: return "int";
        case PrimitiveKind::Float: return "float";
        case PrimitiveKind::Str: return "str";
        case PrimitiveKind::Bool: return "bool";
    }
    return "?";
}

const Property* ClassDef::find_property(std::string_view n) const {
    for (const auto& p : properties)
        if (p.name == n) return &p;
    return nullptr;
}

bool EnumDef::has_literal(std::string_view lit) const {
    return std::find(literals.begin(), literals.end(), lit) != literals.end();
}

namespace {

std::optional<std::uint32_t> parse_bound(std::string_view s) {
    std::uint32_t v = 0;
    if (s.empty()) return std::nullopt;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

std::optional<Multiplicity> Multiplicity::parse(std::string_view text) {
    if (text == "*") return many();
    const auto dots = text.find("..");
    if (dots == std::string_view::npos) {
        auto n = parse_bound(text);
        if (!n) return std::nullopt;
        return exactly(*n);
    }
    auto lo = parse_bound(text.substr(0, dots));
    if (!lo) return std::nullopt;
    const auto hi_text = text.substr(dots + 2);
    if (hi_text == "*") return range(*lo, std::nullopt);
    auto hi = parse_bound(hi_text);
    if (!hi) return std::nullopt;
    return range(*lo, *hi);
}

std::string Multiplicity::to_string() const {
    if (!upper) return lower == 0 ? "*" : std::to_string(lower) + "..*";
    if (*upper == lower) return std::to_string(lower);
    return std::to_string(lower) + ".." + std::to_string(*upper);
}

const ClassDef* ClassModel::find_class(std::string_view n) const {
    for (const auto& c : classes)
        if (c.name == n) return &c;
    return nullptr;
}

const EnumDef* ClassModel::find_enum(std::string_view n) const {
    for (const auto& e : enumerations)
        if (e.name == n) return &e;
    return nullptr;
}

const Association* ClassModel::find_association(std::string_view n) const {
    for (const auto& a : associations)
        if (a.name == n) return &a;
    return nullptr;
}

TypeCategory classify_type(const ClassModel& model, std::string_view type) {
    if (primitive_from_name(type)) return TypeCategory::Primitive;
    if (model.find_class(type)) return TypeCategory::Class;
    if (model.find_enum(type)) return TypeCategory::Enum;
    return TypeCategory::Unknown;
}

std::vector<std::string> direct_generals(const ClassModel& model, std::string_view class_name) {
    std::vector<std::string> out;
    for (const auto& g : model.generalizations)
        if (g.specific == class_name && std::find(out.begin(), out.end(), g.general) == out.end())
            out.push_back(g.general);
    return out;
}

namespace {

const ClassDef& require_class(const ClassModel& model, std::string_view name) {
    const ClassDef* c = model.find_class(name);
    if (!c) throw Error(codes::UnknownClass, "unknown class '" + std::string{name} + "'");
    return *c;
}

// Post-order over generals: general-most first, each class once.
void linearize(const ClassModel& model, const std::string& name, std::set<std::string>& seen,
               std::vector<const ClassDef*>& order) {
    if (!seen.insert(name).second) return;
    for (const auto& g : direct_generals(model, name)) linearize(model, g, seen, order);
    if (const ClassDef* c = model.find_class(name)) order.push_back(c);
}

}  // namespace

std::vector<Property> all_properties(const ClassModel& model, std::string_view class_name) {
    require_class(model, class_name);
    std::set<std::string> seen;
    std::vector<const ClassDef*> order;
    linearize(model, std::string{class_name}, seen, order);
    std::vector<Property> out;
    for (const ClassDef* c : order) out.insert(out.end(), c->properties.begin(), c->properties.end());
    return out;
}

bool is_subclass_of(const ClassModel& model, std::string_view sub, std::string_view super) {
    require_class(model, sub);
    require_class(model, super);
    std::set<std::string, std::less<>> seen;
    std::vector<std::string> stack{std::string{sub}};
    while (!stack.empty()) {
        std::string cur = std::move(stack.back());
        stack.pop_back();
        if (cur == super) return true;
        if (!seen.insert(cur).second) continue;
        for (auto& g : direct_generals(model, cur)) stack.push_back(std::move(g));
    }
    return false;
}

// ---------------------------------------------------------------------------
// validation

namespace {

struct Pending {
    int line;
    int rank;
    std::size_t index;
    Diagnostic diag;
};

class Validator {
public:
    explicit Validator(const ClassModel& m) : model_(m) {}

    Diagnostics run() {
        find_cycles();
        check_classes();
        check_enums();
        check_associations();
        check_generalizations();
        std::stable_sort(pending_.begin(), pending_.end(), [](const Pending& a, const Pending& b) {
            return std::tie(a.line, a.rank, a.index, a.diag.code) <
                   std::tie(b.line, b.rank, b.index, b.diag.code);
        });
        Diagnostics out;
        out.reserve(pending_.size());
        for (auto& p : pending_) out.push_back(std::move(p.diag));
        return out;
    }

private:
    void report(int rank, std::size_t index, const Origin& origin, std::string code, std::string message,
                std::string subject, const std::optional<SourceSpan>& at = std::nullopt) {
        const auto& span = at ? at : origin.span;
        const int line = origin.span ? origin.span->line : 0;
        pending_.push_back({line, rank, index, make_error(std::move(code), std::move(message), span, std::move(subject))});
    }

    void check_name(int rank, std::size_t index, const Origin& origin, const std::string& name,
                    const char* what, const std::optional<SourceSpan>& at = std::nullopt) {
        if (!is_identifier(name))
            report(rank, index, origin, codes::BadIdentifier,
                   std::string{what} + " name '" + name + "' is not an identifier", name, at);
    }

    void check_type_name(int rank, std::size_t index, const Origin& origin, const std::string& name,
                         const char* what) {
        check_name(rank, index, origin, name, what);
        if (primitive_from_name(name))
            report(rank, index, origin, codes::ReservedName,
                   std::string{what} + " name '" + name + "' is a primitive type name", name);
        if (!type_names_.insert(name).second)
            report(rank, index, origin, codes::DupName, "type name '" + name + "' is declared more than once", name);
    }

    void check_classes() {
        for (std::size_t i = 0; i < model_.classes.size(); ++i) {
            const ClassDef& c = model_.classes[i];
            check_type_name(0, i, c.origin, c.name, "class");
            std::set<std::string> own;
            for (const Property& p : c.properties) {
                const std::string subject = c.name + "." + p.name;
                check_name(0, i, c.origin, p.name, "property", p.origin.span);
                if (!own.insert(p.name).second)
                    report(0, i, c.origin, codes::DupProperty,
                           "property '" + p.name + "' declared twice in class '" + c.name + "'", subject, p.origin.span);
                const auto cat = classify_type(model_, p.type);
                if (cat == TypeCategory::Unknown)
                    report(0, i, c.origin, codes::UnknownType,
                           "property '" + subject + "' has unknown type '" + p.type + "'", subject, p.origin.span);
                if (p.is_id && cat != TypeCategory::Primitive && cat != TypeCategory::Unknown)
                    report(0, i, c.origin, codes::IdNonPrimitive,
                           "identifier property '" + subject + "' must have a primitive type", subject, p.origin.span);
                if (p.is_id && p.is_optional)
                    report(0, i, c.origin, codes::IdOptional,
                           "identifier property '" + subject + "' cannot be optional", subject, p.origin.span);
            }
            check_inherited(i, c);
        }
    }

    // name -> declaring class, first declaration wins; nullopt when the class sits on a cycle.
    using FlatMap = std::map<std::string, std::string>;

    const FlatMap* flat(const std::string& cls) {
        if (in_cycle_.count(cls)) return nullptr;
        if (auto it = flat_.find(cls); it != flat_.end()) return &it->second;
        if (!visiting_.insert(cls).second) return nullptr;
        FlatMap merged;
        for (const auto& g : direct_generals(model_, cls)) {
            if (g == cls || !model_.find_class(g)) continue;
            const FlatMap* gm = flat(g);
            if (!gm) return nullptr;
            for (const auto& [n, decl] : *gm) merged.emplace(n, decl);
        }
        visiting_.erase(cls);
        if (const ClassDef* c = model_.find_class(cls))
            for (const auto& p : c->properties) merged.emplace(p.name, cls);
        return &flat_.emplace(cls, std::move(merged)).first->second;
    }

    void check_inherited(std::size_t i, const ClassDef& c) {
        if (in_cycle_.count(c.name)) return;
        std::map<std::string, std::string> merged;
        std::set<std::string> reported;
        for (const auto& g : direct_generals(model_, c.name)) {
            if (g == c.name || !model_.find_class(g)) continue;
            const FlatMap* gm = flat(g);
            if (!gm) return;
            for (const auto& [n, decl] : *gm) {
                auto [it, inserted] = merged.emplace(n, decl);
                if (!inserted && it->second != decl && reported.insert(n).second)
                    report(0, i, c.origin, codes::DupProperty,
                           "class '" + c.name + "' inherits property '" + n + "' from both '" + it->second +
                               "' and '" + decl + "'",
                           c.name + "." + n);
            }
        }
        for (const Property& p : c.properties) {
            auto it = merged.find(p.name);
            if (it != merged.end() && reported.insert(p.name).second)
                report(0, i, c.origin, codes::DupProperty,
                       "property '" + c.name + "." + p.name + "' redeclares inherited property from '" +
                           it->second + "'",
                       c.name + "." + p.name, p.origin.span);
        }
    }

    void check_enums() {
        for (std::size_t i = 0; i < model_.enumerations.size(); ++i) {
            const EnumDef& e = model_.enumerations[i];
            check_type_name(1, i, e.origin, e.name, "enumeration");
            if (e.literals.empty())
                report(1, i, e.origin, codes::EnumEmpty, "enumeration '" + e.name + "' has no literals", e.name);
            std::set<std::string> seen;
            for (const auto& lit : e.literals) {
                check_name(1, i, e.origin, lit, "literal");
                if (!seen.insert(lit).second)
                    report(1, i, e.origin, codes::DupLiteral,
                           "literal '" + lit + "' repeated in enumeration '" + e.name + "'", e.name + "::" + lit);
            }
        }
    }

    void check_associations() {
        std::set<std::string> names;
        for (std::size_t i = 0; i < model_.associations.size(); ++i) {
            const Association& a = model_.associations[i];
            check_name(2, i, a.origin, a.name, "association");
            if (!names.insert(a.name).second)
                report(2, i, a.origin, codes::DupName, "association name '" + a.name + "' is declared more than once",
                       a.name);
            int composites = 0;
            for (const auto& e : a.ends) {
                if (!model_.find_class(e.target))
                    report(2, i, a.origin, codes::UnknownClass,
                           "association '" + a.name + "' references unknown class '" + e.target + "'", a.name);
                if (e.role) check_name(2, i, a.origin, *e.role, "role");
                if (!e.multiplicity.is_valid())
                    report(2, i, a.origin, codes::BadMultiplicity,
                           "association '" + a.name + "' has invalid multiplicity '" + e.multiplicity.to_string() + "'",
                           a.name);
                composites += e.is_composite ? 1 : 0;
            }
            if (a.ends[0].role && a.ends[1].role && *a.ends[0].role == *a.ends[1].role)
                report(2, i, a.origin, codes::DupRole,
                       "association '" + a.name + "' uses role '" + *a.ends[0].role + "' on both ends", a.name);
            if (composites > 1)
                report(2, i, a.origin, codes::MultiComposite,
                       "association '" + a.name + "' marks both ends as composite", a.name);
        }
    }

    void find_cycles() {
        // Tarjan over specific -> general edges between known classes.
        std::map<std::string, std::vector<std::string>> edges;
        for (const auto& g : model_.generalizations)
            if (g.general != g.specific && model_.find_class(g.general) && model_.find_class(g.specific))
                edges[g.specific].push_back(g.general);
        std::map<std::string, int> index, low;
        std::set<std::string> on_stack;
        std::vector<std::string> stack;
        int counter = 0;
        std::function<void(const std::string&)> strong = [&](const std::string& v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack.insert(v);
            for (const auto& w : edges[v]) {
                if (!index.count(w)) {
                    strong(w);
                    low[v] = std::min(low[v], low[w]);
                } else if (on_stack.count(w)) {
                    low[v] = std::min(low[v], index[w]);
                }
            }
            if (low[v] == index[v]) {
                std::set<std::string> scc;
                std::string w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack.erase(w);
                    scc.insert(w);
                } while (w != v);
                if (scc.size() > 1) cycles_.push_back(std::move(scc));
            }
        };
        for (const auto& c : model_.classes)
            if (!index.count(c.name)) strong(c.name);
        for (const auto& scc : cycles_) in_cycle_.insert(scc.begin(), scc.end());
        // Anything that reaches a cycle cannot be flattened either.
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& g : model_.generalizations)
                if (in_cycle_.count(g.general) && !in_cycle_.count(g.specific)) {
                    in_cycle_.insert(g.specific);
                    changed = true;
                }
        }
    }

    void check_generalizations() {
        std::set<std::pair<std::string, std::string>> seen;
        std::vector<bool> cycle_reported(cycles_.size(), false);
        for (std::size_t i = 0; i < model_.generalizations.size(); ++i) {
            const Generalization& g = model_.generalizations[i];
            const std::string subject = g.general + "<|--" + g.specific;
            bool known = true;
            for (const auto* n : {&g.general, &g.specific})
                if (!model_.find_class(*n)) {
                    known = false;
                    report(3, i, g.origin, codes::UnknownClass,
                           "generalization references unknown class '" + *n + "'", subject);
                }
            if (g.general == g.specific) {
                report(3, i, g.origin, codes::GenSelf, "class '" + g.general + "' cannot specialize itself", subject);
                continue;
            }
            if (!seen.emplace(g.general, g.specific).second)
                report(3, i, g.origin, codes::DupGeneralization, "generalization " + subject + " is repeated", subject);
            if (!known) continue;
            for (std::size_t k = 0; k < cycles_.size(); ++k) {
                if (cycle_reported[k] || !cycles_[k].count(g.general) || !cycles_[k].count(g.specific)) continue;
                cycle_reported[k] = true;
                std::string members;
                for (const auto& m : cycles_[k]) members += (members.empty() ? "" : ", ") + m;
                report(3, i, g.origin, codes::GenCycle, "generalization cycle through {" + members + "}", subject);
            }
        }
    }

    const ClassModel& model_;
    std::vector<Pending> pending_;
    std::set<std::string> type_names_;
    std::vector<std::set<std::string>> cycles_;
    std::set<std::string> in_cycle_;
    std::map<std::string, FlatMap> flat_;
    std::set<std::string> visiting_;
};

}  // namespace

Diagnostics validate_class_model(const ClassModel& model) { return Validator{model}.run(); }

// ---------------------------------------------------------------------------
// builder

ClassModelBuilder::ClassModelBuilder(std::string model_name) { model_.name = std::move(model_name); }

ClassModelBuilder& ClassModelBuilder::add_class(std::string name, bool is_abstract) {
    model_.classes.push_back(ClassDef{std::move(name), is_abstract, {}, {}});
    return *this;
}

ClassModelBuilder& ClassModelBuilder::attribute(std::string name, std::string type, bool is_id, bool is_optional) {
    if (model_.classes.empty()) throw Error(codes::UnknownClass, "attribute() called before add_class()");
    model_.classes.back().properties.push_back(Property{std::move(name), std::move(type), is_id, is_optional, {}});
    return *this;
}

ClassModelBuilder& ClassModelBuilder::add_enum(std::string name, std::vector<std::string> literals) {
    model_.enumerations.push_back(EnumDef{std::move(name), std::move(literals), {}});
    return *this;
}

ClassModelBuilder& ClassModelBuilder::associate(std::string name, AssociationEnd first, AssociationEnd second) {
    model_.associations.push_back(Association{std::move(name), {std::move(first), std::move(second)}, {}});
    return *this;
}

ClassModelBuilder& ClassModelBuilder::generalize(std::string general, std::string specific) {
    model_.generalizations.push_back(Generalization{std::move(general), std::move(specific), {}});
    return *this;
}

ClassModel ClassModelBuilder::build() && { return std::move(model_); }
ClassModel ClassModelBuilder::build() const& { return model_; }

AssociationEnd assoc_end(std::string target, Multiplicity m, std::optional<std::string> role, bool composite) {
    return AssociationEnd{std::move(target), std::move(role), m, composite};
}

}  // namespace buml
