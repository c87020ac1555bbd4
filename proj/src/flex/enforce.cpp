#include <map>
#include <set>

#include "buml/flex/flex.hpp"

namespace buml::flex {

namespace {

class Enforcer {
public:
    Enforcer(const ObjectModel& objects, const ClassModel& model) : in_(objects), model_(model) {
        for (std::size_t i = 0; i < in_.links.size(); ++i) link_index_.push_back(i);
    }

    EnforcementResult run() {
        out_ = in_;
        bool changed = true;
        while (changed) {
            changed = false;
            changed |= prune_objects();
            changed |= prune_slots();
            changed |= prune_incomplete_objects();
            changed |= prune_links();
            changed |= prune_excess_links();
        }
        EnforcementResult r;
        r.pruned = std::move(out_);
        r.removed = std::move(removed_);
        r.residual = check_conformance(r.pruned, model_);
        return r;
    }

private:
    void drop(const char* code, std::string message, const Origin& origin, std::string subject) {
        removed_.push_back(make_warning(code, "removed " + message, origin.span, std::move(subject)));
    }

    bool prune_objects() {
        std::set<std::string> ids;
        std::vector<ObjectDef> kept;
        for (auto& o : out_.objects) {
            const ClassDef* c = model_.find_class(o.classifier);
            if (!ids.insert(o.id).second)
                drop(codes::DupObject, "duplicate object '" + o.id + "'", o.origin, o.id);
            else if (!c)
                drop(codes::UnknownClassifier, "object '" + o.id + "' of unknown class '" + o.classifier + "'",
                     o.origin, o.id);
            else if (c->is_abstract)
                drop(codes::AbstractInstance, "object '" + o.id + "' of abstract class '" + o.classifier + "'",
                     o.origin, o.id);
            else {
                kept.push_back(std::move(o));
                continue;
            }
        }
        const bool changed = kept.size() != out_.objects.size();
        out_.objects = std::move(kept);
        return changed;
    }

    bool prune_slots() {
        bool changed = false;
        for (auto& o : out_.objects) {
            const std::vector<Property> props = all_properties(model_, o.classifier);
            std::set<std::string> seen;
            std::vector<AttributeLink> kept;
            for (auto& s : o.slots) {
                const std::string subject = o.id + "." + s.property;
                const Property* p = nullptr;
                for (const auto& q : props)
                    if (q.name == s.property) p = &q;
                if (!seen.insert(s.property).second)
                    drop(codes::DupSlot, "duplicate slot '" + subject + "'", s.origin, subject);
                else if (!p)
                    drop(codes::UnknownProperty, "slot '" + subject + "' for undeclared property", s.origin, subject);
                else if (!value_fits(model_, *p, s.value))
                    drop(codes::SlotType, "slot '" + subject + "' whose value " + to_literal(s.value) +
                                              " does not fit type '" + p->type + "'",
                         s.origin, subject);
                else {
                    kept.push_back(std::move(s));
                    continue;
                }
                changed = true;
            }
            o.slots = std::move(kept);
        }
        return changed;
    }

    bool prune_incomplete_objects() {
        std::vector<ObjectDef> kept;
        for (auto& o : out_.objects) {
            std::string missing;
            for (const auto& p : all_properties(model_, o.classifier))
                if (!p.is_optional && !o.find_slot(p.name)) {
                    missing = p.name;
                    break;
                }
            if (missing.empty()) {
                kept.push_back(std::move(o));
                continue;
            }
            drop(codes::SlotMissing, "object '" + o.id + "' lacking required property '" + missing + "'", o.origin,
                 o.id);
        }
        const bool changed = kept.size() != out_.objects.size();
        out_.objects = std::move(kept);
        return changed;
    }

    void keep_links(const std::vector<bool>& keep) {
        std::vector<Link> links;
        std::vector<std::size_t> index;
        for (std::size_t i = 0; i < out_.links.size(); ++i)
            if (keep[i]) {
                links.push_back(std::move(out_.links[i]));
                index.push_back(link_index_[i]);
            }
        out_.links = std::move(links);
        link_index_ = std::move(index);
    }

    std::string link_subject(std::size_t i) const { return "link#" + std::to_string(link_index_[i]); }

    bool prune_links() {
        std::vector<bool> keep(out_.links.size(), true);
        bool changed = false;
        for (std::size_t i = 0; i < out_.links.size(); ++i) {
            const Link& l = out_.links[i];
            const std::string what = "link " + l.ends[0] + " -- " + l.ends[1] + " : " + l.association;
            const Association* a = model_.find_association(l.association);
            if (!a) {
                drop(codes::UnknownAssociation, what + " of unknown association", l.origin, link_subject(i));
                keep[i] = false;
                changed = true;
                continue;
            }
            for (int k = 0; k < 2 && keep[i]; ++k) {
                const ObjectDef* o = out_.find_object(l.ends[k]);
                if (!o) {
                    drop(codes::UnknownObject, what + " to missing object '" + l.ends[k] + "'", l.origin,
                         link_subject(i));
                    keep[i] = false;
                } else if (!is_subclass_of(model_, o->classifier, a->ends[k].target)) {
                    drop(codes::LinkEndType, what + " whose end '" + o->id + "' is not a " + a->ends[k].target,
                         l.origin, link_subject(i));
                    keep[i] = false;
                }
            }
            changed |= !keep[i];
        }
        if (changed) keep_links(keep);
        return changed;
    }

    // Greedy in declaration order, so later links give way to earlier ones.
    bool prune_excess_links() {
        std::map<std::tuple<std::string, int, std::string>, std::uint32_t> partners;
        std::vector<bool> keep(out_.links.size(), true);
        bool changed = false;
        for (std::size_t i = 0; i < out_.links.size(); ++i) {
            const Link& l = out_.links[i];
            const Association* a = model_.find_association(l.association);
            bool fits = true;
            for (int k = 0; k < 2; ++k) {
                const auto& upper = a->ends[k].multiplicity.upper;
                // objects at end 1-k gain one end-k partner
                if (upper && partners[{l.association, k, l.ends[1 - k]}] + 1 > *upper) fits = false;
            }
            if (!fits) {
                drop(codes::MultUpper,
                     "link " + l.ends[0] + " -- " + l.ends[1] + " : " + l.association + " beyond an upper bound",
                     l.origin, link_subject(i));
                keep[i] = false;
                changed = true;
                continue;
            }
            for (int k = 0; k < 2; ++k) ++partners[{l.association, k, l.ends[1 - k]}];
        }
        if (changed) keep_links(keep);
        return changed;
    }

    const ObjectModel& in_;
    const ClassModel& model_;
    ObjectModel out_;
    std::vector<std::size_t> link_index_;  // position of each surviving link in the input
    Diagnostics removed_;
};

}  // namespace

EnforcementResult enforce_conformance(const ObjectModel& objects, const ClassModel& model) {
    return Enforcer{objects, model}.run();
}

}  // namespace buml::flex
