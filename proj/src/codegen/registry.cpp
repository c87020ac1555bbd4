#include <algorithm>

#include "buml/codegen/generator.hpp"
#include "buml/names.hpp"

namespace buml::codegen {

void GeneratorRegistry::register_generator(GeneratorDescriptor descriptor) {
    if (!is_identifier(descriptor.id))
        throw Error(codes::BadIdentifier, "generator id '" + descriptor.id + "' is not an identifier");
    if (contains(descriptor.id))
        throw Error(codes::DupGenerator, "generator '" + descriptor.id + "' is already registered");
    generators_.push_back(std::move(descriptor));
}

const GeneratorDescriptor& GeneratorRegistry::find(std::string_view id) const {
    for (const auto& g : generators_)
        if (g.id == id) return g;
    throw Error(codes::NoSuchGenerator, "no generator named '" + std::string{id} + "'");
}

bool GeneratorRegistry::contains(std::string_view id) const {
    return std::any_of(generators_.begin(), generators_.end(), [&](const auto& g) { return g.id == id; });
}

std::vector<std::string> GeneratorRegistry::ids() const {
    std::vector<std::string> out;
    for (const auto& g : generators_) out.push_back(g.id);
    return out;
}

GeneratorRegistry default_registry() {
    GeneratorRegistry r;
    r.register_generator({"classes", "Plain classes", generate_plain_classes});
    r.register_generator({"sql", "SQL DDL", generate_sql_ddl});
    return r;
}

bool is_safe_relative_path(std::string_view path) {
    if (path.empty() || path.front() == '/' || path.back() == '/') return false;
    if (path.find('\\') != std::string_view::npos || path.find(':') != std::string_view::npos) return false;
    std::size_t start = 0;
    while (start <= path.size()) {
        std::size_t end = path.find('/', start);
        if (end == std::string_view::npos) end = path.size();
        const std::string_view seg = path.substr(start, end - start);
        if (seg.empty() || seg == "." || seg == "..") return false;
        start = end + 1;
    }
    return true;
}

GenerationResult generate(const GeneratorRegistry& registry, std::string_view id, const ClassModel& model) {
    const GeneratorDescriptor& g = registry.find(id);
    GenerationResult result;
    result.diagnostics = validate_class_model(model);
    if (has_errors(result.diagnostics)) return result;
    GenerationResult produced = g.produce(model);
    result.diagnostics.insert(result.diagnostics.end(), produced.diagnostics.begin(), produced.diagnostics.end());
    for (const auto& a : produced.artifacts) {
        if (!is_safe_relative_path(a.relative_path))
            result.diagnostics.push_back(make_error(codes::BadArtifactPath,
                                                    "generator '" + g.id + "' produced unsafe path '" +
                                                        a.relative_path + "'",
                                                    std::nullopt, a.relative_path));
    }
    if (!has_errors(result.diagnostics)) result.artifacts = std::move(produced.artifacts);
    return result;
}

}  // namespace buml::codegen
