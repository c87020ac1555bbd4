#include <set>

#include "buml/codegen/generator.hpp"
#include "buml/names.hpp"
#include "text_builder.hpp"

namespace buml::codegen {

namespace {

// Association ends become attributes set in the body, not parameters: the
// constructor mirrors the attribute list and nothing else.
struct EndParam {
    std::string name;
    bool collection;
};

// Association ends reachable from instances of `cls`, inherited ones included.
std::vector<EndParam> end_params(const ClassModel& model, const ClassDef& cls) {
    std::vector<EndParam> out;
    for (const auto& a : model.associations) {
        for (int k = 0; k < 2; ++k) {
            const AssociationEnd& near = a.ends[1 - k];
            const AssociationEnd& far = a.ends[k];
            if (!is_subclass_of(model, cls.name, near.target)) continue;
            out.push_back({far.role ? *far.role : snake_case(far.target), !far.multiplicity.at_most_one()});
        }
    }
    return out;
}

std::string header(const ClassModel& model) {
    return "# Generated by buml classes generator from model '" + model.name + "'.";
}

}  // namespace

GenerationResult generate_plain_classes(const ClassModel& model) {
    GenerationResult result;
    std::set<std::string> paths;
    for (const auto& cls : model.classes) {
        const std::vector<Property> props = all_properties(model, cls.name);
        const std::vector<EndParam> ends = end_params(model, cls);

        std::set<std::string> params;
        bool clash = false;
        for (const auto& p : props) clash |= !params.insert(p.name).second;
        for (const auto& e : ends) clash |= !params.insert(e.name).second;
        if (clash) {
            result.diagnostics.push_back(make_error(codes::NameCollision,
                                                    "members of '" + cls.name +
                                                        "' collide; give the association ends distinct roles",
                                                    cls.origin.span, cls.name));
            continue;
        }
        const std::string path = snake_case(cls.name) + ".gen";
        if (!paths.insert(path).second) {
            result.diagnostics.push_back(make_error(codes::NameCollision,
                                                    "class '" + cls.name + "' maps to '" + path +
                                                        "', which another class already uses",
                                                    cls.origin.span, cls.name));
            continue;
        }

        std::string signature = "self";
        for (const auto& p : props) signature += ", " + p.name;

        std::string bases;
        for (const auto& g : direct_generals(model, cls.name)) bases += (bases.empty() ? "" : ", ") + g;

        TextBuilder out;
        out.line(header(model));
        if (cls.is_abstract) out.line("# abstract: not meant to be instantiated directly");
        out.line();
        out.line();
        out.line("class " + cls.name + (bases.empty() ? "" : "(" + bases + ")") + ":");
        out.indent();
        out.line("def __init__(" + signature + "):");
        out.indent();
        for (const auto& p : props) out.line("self." + p.name + " = " + p.name);
        for (const auto& e : ends)
            out.line("self." + e.name + " = " + (e.collection ? "[]" : "None"));
        if (props.empty() && ends.empty()) out.line("pass");
        result.artifacts.push_back({path, out.str()});
    }
    if (has_errors(result.diagnostics)) result.artifacts.clear();
    return result;
}

}  // namespace buml::codegen
