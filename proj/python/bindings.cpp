#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "buml/cli/cli.hpp"
#include "buml/codegen/generator.hpp"
#include "buml/flex/flex.hpp"
#include "buml/fsm/machine.hpp"
#include "buml/ocl/interpreter.hpp"
#include "buml/ocl/parser.hpp"
#include "buml/syntax/plantuml.hpp"

namespace py = pybind11;
using namespace buml;

namespace {

// Raised for unreadable inputs; maps to buml.InputError on the Python side.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] void reject(const Diagnostics& diags) {
    std::string msg;
    for (const auto& d : diags)
        if (d.severity == Severity::Error) msg += format_diagnostic(d) + "\n";
    if (!msg.empty()) msg.pop_back();
    throw InputError(msg);
}

ClassModel load_model(const std::string& text) {
    auto r = parse_class_model(text);
    if (!r.ok()) reject(r.diagnostics);
    return *r.model;
}

ObjectModel load_objects(const std::string& text, const ClassModel* model) {
    auto r = parse_object_model(text, model);
    if (!r.ok()) reject(r.diagnostics);
    return *r.model;
}

std::vector<Diagnostic> validate_text(const std::string& text) {
    // Parse errors and validation findings come back together here.
    return parse_class_model(text).diagnostics;
}

std::vector<Diagnostic> conformance(const std::string& model_text, const std::string& objects_text) {
    const ClassModel m = load_model(model_text);
    return check_conformance(load_objects(objects_text, &m), m);
}

py::list constraints(const std::string& model_text, const std::string& objects_text, const std::string& ocl_text) {
    const ClassModel m = load_model(model_text);
    const ObjectModel o = load_objects(objects_text, &m);
    auto parsed = ocl::parse_ocl(ocl_text);
    if (!parsed.ok()) reject(parsed.diagnostics);
    py::list out;
    for (const auto& r : ocl::check_all(parsed.constraints, o, m).results) {
        if (r.error) out.append(py::make_tuple(r.constraint, "", "error", *r.error));
        for (const auto& v : r.per_instance)
            out.append(py::make_tuple(r.constraint, v.object_id, std::string(ocl::verdict_name(v.verdict)), v.message));
    }
    return out;
}

py::dict generate_text(const std::string& model_text, const std::string& target) {
    const auto result = codegen::generate(codegen::default_registry(), target, load_model(model_text));
    if (!result.ok()) reject(result.diagnostics);
    py::dict out;
    for (const auto& a : result.artifacts) out[py::str(a.relative_path)] = a.content;
    return out;
}

std::vector<std::string> run_fsm(const std::string& machine_text, const std::string& scenario_text) {
    auto machine = fsm::parse_machine(machine_text);
    if (!machine.ok()) reject(machine.diagnostics);
    const Diagnostics problems = fsm::validate_machine(*machine.model);
    if (has_errors(problems)) reject(problems);
    auto scenario = fsm::parse_scenario(scenario_text);
    if (!scenario.ok()) reject(scenario.diagnostics);
    const fsm::ScenarioResult r = fsm::run_scenario(*machine.model, scenario.steps);
    if (r.failure) throw std::runtime_error(format_diagnostic(*r.failure));
    std::vector<std::string> lines;
    for (const auto& e : r.session.trace) lines.push_back(fsm::format_trace_entry(e));
    return lines;
}

py::tuple infer(const std::string& objects_text) {
    const flex::InferenceResult r = flex::infer_class_model(load_objects(objects_text, nullptr));
    return py::make_tuple(serialize_class_model(r.model), r.diagnostics);
}

py::tuple enforce(const std::string& model_text, const std::string& objects_text) {
    const ClassModel m = load_model(model_text);
    const flex::EnforcementResult r = flex::enforce_conformance(load_objects(objects_text, &m), m);
    return py::make_tuple(serialize_object_model(r.pruned), r.removed, r.residual);
}

py::tuple run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Class models, object models, OCL, code generation and state machines";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<Error>(m, "ModelError", PyExc_RuntimeError);

    py::class_<Diagnostic>(m, "Diagnostic")
        .def_property_readonly("severity", [](const Diagnostic& d) { return std::string(severity_name(d.severity)); })
        .def_readonly("code", &Diagnostic::code)
        .def_readonly("message", &Diagnostic::message)
        .def_readonly("subject", &Diagnostic::subject)
        .def_property_readonly("line", [](const Diagnostic& d) { return d.location ? d.location->line : 0; })
        .def_property_readonly("column", [](const Diagnostic& d) { return d.location ? d.location->column : 0; })
        .def("__str__", [](const Diagnostic& d) { return format_diagnostic(d); })
        .def("__repr__", [](const Diagnostic& d) { return "<Diagnostic " + format_diagnostic(d) + ">"; });

    m.def("validate_model", &validate_text, py::arg("model_text"),
          "Parse and validate a class model; returns every finding.");
    m.def("check_conformance", &conformance, py::arg("model_text"), py::arg("objects_text"));
    m.def("check_constraints", &constraints, py::arg("model_text"), py::arg("objects_text"), py::arg("ocl_text"),
          "One (constraint, object_id, verdict, message) tuple per evaluated instance.");
    m.def("generate", &generate_text, py::arg("model_text"), py::arg("target"),
          "Map of relative path to file content.");
    m.def("generators", [] { return codegen::default_registry().ids(); });
    m.def("run_fsm", &run_fsm, py::arg("machine_text"), py::arg("scenario_text"));
    m.def("infer", &infer, py::arg("objects_text"), "(model_text, warnings)");
    m.def("enforce", &enforce, py::arg("model_text"), py::arg("objects_text"), "(objects_text, removed, residual)");
    m.def("run_cli", &run_cli, py::arg("args"), "(exit_code, stdout, stderr)");
}
