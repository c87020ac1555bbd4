#pragma once

#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "buml/syntax/plantuml.hpp"

namespace buml::testing {

inline std::string data_path(const std::string& rel) { return std::string(BUML_TEST_DATA) + "/" + rel; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in, "cannot open " << path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ClassModel model_from(std::string_view text) {
    auto r = parse_class_model(text);
    REQUIRE_MESSAGE(r.model, (r.diagnostics.empty() ? std::string{} : format_diagnostic(r.diagnostics[0])));
    return *r.model;
}

inline ObjectModel objects_from(std::string_view text, const ClassModel* model = nullptr) {
    auto r = parse_object_model(text, model);
    REQUIRE_MESSAGE(r.model, (r.diagnostics.empty() ? std::string{} : format_diagnostic(r.diagnostics[0])));
    return *r.model;
}

inline ClassModel dpp_model() { return model_from(slurp(data_path("fixtures/dpp/dpp.buml.puml"))); }

inline ObjectModel dpp_objects() {
    const ClassModel m = dpp_model();
    return objects_from(slurp(data_path("fixtures/dpp/dpp.objs")), &m);
}

inline std::vector<std::string> codes_of(const Diagnostics& ds) {
    std::vector<std::string> out;
    for (const auto& d : ds) out.push_back(d.code);
    return out;
}

}  // namespace buml::testing
