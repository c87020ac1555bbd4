#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "buml/diagnostic.hpp"
#include "buml/metamodel/class_model.hpp"

namespace buml::codegen {

struct GeneratedArtifact {
    std::string relative_path;  // '/'-separated, no '..' or '.' segments
    std::string content;        // UTF-8, LF line endings

    bool operator==(const GeneratedArtifact&) const = default;
};

struct GenerationResult {
    std::vector<GeneratedArtifact> artifacts;  // empty when diagnostics contain errors
    Diagnostics diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

using Producer = std::function<GenerationResult(const ClassModel&)>;

struct GeneratorDescriptor {
    std::string id;
    std::string display_name;
    Producer produce;
};

class GeneratorRegistry {
public:
    /// Throws Error(dup-generator) for a taken id, Error(bad-identifier) for a malformed one.
    void register_generator(GeneratorDescriptor descriptor);

    /// Throws Error(no-such-generator).
    const GeneratorDescriptor& find(std::string_view id) const;

    bool contains(std::string_view id) const;

    /// Registration order.
    std::vector<std::string> ids() const;

private:
    std::vector<GeneratorDescriptor> generators_;
};

/// "classes" then "sql".
GeneratorRegistry default_registry();

/// Validates the model first; an invalid model yields its validation
/// diagnostics and no artifacts. Throws Error(no-such-generator).
GenerationResult generate(const GeneratorRegistry& registry, std::string_view id, const ClassModel& model);

bool is_safe_relative_path(std::string_view path);

/// One `<snake_name>.gen` per class: a class declaration whose constructor
/// takes exactly all_properties in order. Association ends are initialized in
/// the body: `[]` when the far upper bound exceeds 1, else `None`.
GenerationResult generate_plain_classes(const ClassModel& model);

/// `schema.sql`: a table per concrete class with flattened columns, foreign
/// keys on the many side, join tables for many-to-many associations.
GenerationResult generate_sql_ddl(const ClassModel& model);

}  // namespace buml::codegen
