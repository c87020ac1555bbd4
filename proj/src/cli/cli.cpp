#include "buml/cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "buml/codegen/generator.hpp"
#include "buml/flex/flex.hpp"
#include "buml/fsm/machine.hpp"
#include "buml/ocl/interpreter.hpp"
#include "buml/ocl/parser.hpp"
#include "buml/syntax/plantuml.hpp"

namespace buml::cli {

namespace fs = std::filesystem;

namespace {

// Signals an early exit with a status code after the report is printed.
struct Exit {
    int code;
};

struct Io {
    std::ostream& out;
    std::ostream& err;
    std::size_t errors = 0;

    void report(const Diagnostic& d, std::string_view file) {
        out << format_diagnostic(d, file.empty() ? "-" : file) << '\n';
        if (d.severity == Severity::Error) ++errors;
    }
    void report_all(const Diagnostics& ds, std::string_view file) {
        for (const auto& d : ds) report(d, file);
    }
    int finish(int code) {
        if (errors) err << "buml: " << errors << " error(s)\n";
        return code;
    }
};

std::string read_file(Io& io, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        io.report(make_error(codes::Io, "cannot read '" + path + "'"), path);
        throw Exit{kUsage};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(Io& io, const fs::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (ec || !out || !(out << content) || !out.flush()) {
        io.report(make_error(codes::Io, "cannot write '" + path.generic_string() + "'"), path.generic_string());
        throw Exit{kUsage};
    }
}

// Parse failures exit 2; validation findings are printed and left to the caller.
ClassModel load_model(Io& io, const std::string& path, bool* valid = nullptr) {
    const std::string text = read_file(io, path);
    ParseResult<ClassModel> syntax_only = parse_class_model(text, path, false);
    if (!syntax_only.model) {
        io.report_all(syntax_only.diagnostics, path);
        throw Exit{kUsage};
    }
    const Diagnostics findings = validate_class_model(*syntax_only.model);
    io.report_all(findings, path);
    if (valid) *valid = !has_errors(findings);
    return std::move(*syntax_only.model);
}

ObjectModel load_objects(Io& io, const std::string& path, const ClassModel* model) {
    const std::string text = read_file(io, path);
    ParseResult<ObjectModel> r = parse_object_model(text, model, path);
    io.report_all(r.diagnostics, path);
    if (!r.model) throw Exit{kUsage};
    return std::move(*r.model);
}

int cmd_validate(Io& io, const std::string& model_path) {
    const std::string text = read_file(io, model_path);
    const ParseResult<ClassModel> r = parse_class_model(text, model_path, true);
    io.report_all(r.diagnostics, model_path);
    return io.finish(has_errors(r.diagnostics) ? kModelFailure : kOk);
}

int cmd_check(Io& io, const std::string& model_path, const std::string& objects_path, const std::string& ocl_path) {
    bool valid = true;
    const ClassModel model = load_model(io, model_path, &valid);
    const ObjectModel objects = load_objects(io, objects_path, &model);
    const ocl::ConstraintParseResult constraints =
        ocl_path.empty() ? ocl::ConstraintParseResult{} : ocl::parse_ocl(read_file(io, ocl_path), ocl_path);
    io.report_all(constraints.diagnostics, ocl_path);
    if (!constraints.ok()) return io.finish(kUsage);
    if (!valid) return io.finish(kModelFailure);

    const Diagnostics conformance = check_conformance(objects, model);
    io.report_all(conformance, objects_path);
    bool failed = has_errors(conformance);

    const ocl::CheckReport report = ocl::check_all(constraints.constraints, objects, model);
    for (std::size_t i = 0; i < report.results.size(); ++i) {
        const ocl::EvalResult& r = report.results[i];
        if (r.error) {
            io.report(make_error(codes::UnknownContext, *r.error, constraints.constraints[i].span, r.constraint),
                      ocl_path);
            failed = true;
        }
        for (const auto& v : r.per_instance) {
            if (v.verdict == ocl::Verdict::True) continue;
            failed = true;
            io.out << "FAIL " << r.constraint << ' ' << v.object_id;
            if (v.verdict == ocl::Verdict::Error) io.out << " error: " << v.message;
            io.out << '\n';
        }
    }
    if (failed && !io.errors) io.err << "buml: constraint check failed\n";
    return io.finish(failed ? kModelFailure : kOk);
}

int cmd_generate(Io& io, const std::string& model_path, const std::string& target, const std::string& out_dir) {
    const codegen::GeneratorRegistry registry = codegen::default_registry();
    if (!registry.contains(target)) {
        std::string ids;
        for (const auto& id : registry.ids()) ids += (ids.empty() ? "" : ", ") + id;
        io.report(make_error(codes::NoSuchGenerator, "no generator named '" + target + "'; available: " + ids), "-");
        return io.finish(kUsage);
    }
    bool valid = true;
    const ClassModel model = load_model(io, model_path, &valid);
    if (!valid) return io.finish(kModelFailure);
    const codegen::GenerationResult result = codegen::generate(registry, target, model);
    io.report_all(result.diagnostics, model_path);
    if (!result.ok()) return io.finish(kModelFailure);
    for (const auto& a : result.artifacts) {
        const fs::path path = fs::path(out_dir) / target / a.relative_path;
        write_file(io, path, a.content);
        io.out << path.generic_string() << '\n';
    }
    return io.finish(kOk);
}

int cmd_fsm_run(Io& io, const std::string& machine_path, const std::string& scenario_path) {
    const ParseResult<fsm::StateMachine> m = fsm::parse_machine(read_file(io, machine_path), machine_path);
    io.report_all(m.diagnostics, machine_path);
    if (!m.model) return io.finish(kUsage);
    const Diagnostics findings = fsm::validate_machine(*m.model);
    io.report_all(findings, machine_path);
    if (has_errors(findings)) return io.finish(kUsage);

    const fsm::ScenarioParseResult s = fsm::parse_scenario(read_file(io, scenario_path), scenario_path);
    io.report_all(s.diagnostics, scenario_path);
    if (!s.ok()) return io.finish(kUsage);

    const fsm::ScenarioResult r = fsm::run_scenario(*m.model, s.steps);
    io.out << fsm::format_trace(r.session.trace);
    if (r.failure) {
        io.report(*r.failure, scenario_path);
        return io.finish(kModelFailure);
    }
    return io.finish(kOk);
}

int cmd_infer(Io& io, const std::string& objects_path, const std::string& out_path) {
    const ObjectModel objects = load_objects(io, objects_path, nullptr);
    const flex::InferenceResult r = flex::infer_class_model(objects);
    const Diagnostics findings = validate_class_model(r.model);
    if (has_errors(findings)) {
        // Classifier names that cannot name a class (e.g. `int`) end up here.
        io.report_all(findings, objects_path);
        return io.finish(kModelFailure);
    }
    const std::string text = serialize_class_model(r.model);
    if (out_path.empty()) {
        for (const auto& d : r.diagnostics) io.err << format_diagnostic(d, objects_path) << '\n';
        io.out << text;
    } else {
        io.report_all(r.diagnostics, objects_path);
        write_file(io, out_path, text);
    }
    return io.finish(kOk);
}

int cmd_enforce(Io& io, const std::string& model_path, const std::string& objects_path, const std::string& out_path) {
    bool valid = true;
    const ClassModel model = load_model(io, model_path, &valid);
    if (!valid) return io.finish(kModelFailure);
    const ObjectModel objects = load_objects(io, objects_path, &model);
    const flex::EnforcementResult r = flex::enforce_conformance(objects, model);
    const std::string text = serialize_object_model(r.pruned);
    if (out_path.empty()) {
        for (const auto& d : r.removed) io.err << format_diagnostic(d, objects_path) << '\n';
        for (const auto& d : r.residual) io.err << format_diagnostic(d, objects_path) << '\n';
        io.out << text;
        return has_errors(r.residual) ? kModelFailure : kOk;
    }
    io.report_all(r.removed, objects_path);
    io.report_all(r.residual, objects_path);
    write_file(io, out_path, text);
    return io.finish(has_errors(r.residual) ? kModelFailure : kOk);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Model-driven engineering toolkit: class models, OCL, code generation, state machines", "buml"};
    app.require_subcommand(1);

    std::string model, objects, ocl, target, out_path, machine, scenario;

    auto* validate = app.add_subcommand("validate", "Parse and validate a class model");
    validate->add_option("--model", model, "Class model (.buml.puml)")->required();

    auto* check = app.add_subcommand("check", "Check an object model against a class model and OCL invariants");
    check->add_option("--model", model, "Class model")->required();
    check->add_option("--objects", objects, "Object model (.objs)")->required();
    check->add_option("--ocl", ocl, "Invariants (.ocl)");

    auto* generate = app.add_subcommand("generate", "Run a code generator");
    generate->add_option("--model", model, "Class model")->required();
    generate->add_option("--target", target, "Generator id")->required();
    generate->add_option("--out", out_path, "Output directory")->required();

    auto* fsm_run = app.add_subcommand("fsm-run", "Replay a scenario on a state machine");
    fsm_run->add_option("--machine", machine, "Machine (.fsm)")->required();
    fsm_run->add_option("--scenario", scenario, "Scenario file")->required();

    auto* infer = app.add_subcommand("infer", "Infer a class model from an object model");
    infer->add_option("--objects", objects, "Object model")->required();
    infer->add_option("--out", out_path, "Where to write the class model (default: stdout)");

    auto* enforce = app.add_subcommand("enforce", "Prune an object model until it conforms");
    enforce->add_option("--model", model, "Class model")->required();
    enforce->add_option("--objects", objects, "Object model")->required();
    enforce->add_option("--out", out_path, "Where to write the pruned object model (default: stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    Io io{out, err};
    try {
        if (*validate) return cmd_validate(io, model);
        if (*check) return cmd_check(io, model, objects, ocl);
        if (*generate) return cmd_generate(io, model, target, out_path);
        if (*fsm_run) return cmd_fsm_run(io, machine, scenario);
        if (*infer) return cmd_infer(io, objects, out_path);
        if (*enforce) return cmd_enforce(io, model, objects, out_path);
    } catch (const Exit& e) {
        return io.finish(e.code);
    } catch (const std::exception& e) {
        err << "buml: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace buml::cli
