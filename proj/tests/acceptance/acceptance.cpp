// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "buml/cli/cli.hpp"
#include "buml/codegen/generator.hpp"
#include "buml/flex/flex.hpp"
#include "buml/fsm/machine.hpp"
#include "buml/ocl/interpreter.hpp"
#include "buml/ocl/parser.hpp"
#include "buml/syntax/plantuml.hpp"
#include "support/ocl_oracle.hpp"
#include "support/random_models.hpp"

using namespace buml;
using namespace buml::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& why) {
        if (!cond && pass) {
            pass = false;
            detail = why;
        }
    }
};

std::string data(const std::string& rel) { return std::string(BUML_TEST_DATA) + "/" + rel; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    if (out) *out = o.str();
    return code;
}

// 1. DPP end-to-end through the command-line front end.
Outcome dpp_end_to_end() {
    Outcome r;
    const fs::path tmp = fs::temp_directory_path() / ("buml_accept_" + std::to_string(::getpid()));
    fs::create_directories(tmp);
    const std::string model = data("fixtures/dpp/dpp.buml.puml");

    r.require(cli({"validate", "--model", model}) == cli::kOk, "validate did not exit 0");
    r.require(cli({"generate", "--model", model, "--target", "classes", "--out", tmp.string()}) == cli::kOk,
              "generate classes failed");
    const std::string cls = slurp(tmp / "classes" / "product_passport.gen");
    const std::string want = "def __init__(self, code, product_name, brand):";
    r.require(cls.find(want) != std::string::npos, "ProductPassport constructor is not (code, product_name, brand)");
    r.require(cli({"generate", "--model", model, "--target", "sql", "--out", tmp.string()}) == cli::kOk,
              "generate sql failed");
    r.require(slurp(tmp / "sql" / "schema.sql").find("PRIMARY KEY (code)") != std::string::npos,
              "no PRIMARY KEY (code)");
    std::error_code ec;
    fs::remove_all(tmp, ec);
    return r;
}

// 2. parse(serialize(m)) == m on random class models.
Outcome parser_round_trip() {
    Outcome r;
    Rng rng{20240501};
    ModelShape shape;
    shape.max_classes = 8;
    shape.max_associations = 6;
    int failures = 0;
    for (int i = 0; i < 500; ++i) {
        const ClassModel m = random_class_model(rng, shape);
        const auto back = parse_class_model(serialize_class_model(m));
        if (!back.model || !(*back.model == m)) ++failures;
    }
    r.require(failures == 0, std::to_string(failures) + "/500 models failed to round-trip");
    return r;
}

// 3. Interpreter verdicts equal the brute-force evaluator's.
Outcome ocl_oracle_equivalence() {
    Outcome r;
    Rng rng{8675309};
    PopulationShape shape;
    shape.max_objects = 8;
    shape.max_links = 12;
    int pairs = 0, mismatches = 0;
    while (pairs < 1000) {
        const ClassModel m = random_class_model(rng);
        if (m.classes.empty()) continue;
        const ObjectModel o = random_population(rng, m, shape);
        const std::string ctx = random_context(rng, m, o);
        const ocl::OclConstraint c{ctx, "inv", random_invariant(rng, m, ctx, 4), std::nullopt};
        const ocl::EvalResult got = ocl::evaluate_constraint(c, o, m);
        const auto want = oracle_verdicts(*c.body, ctx, o, m);
        bool same = got.per_instance.size() == want.size() && !got.error;
        for (std::size_t k = 0; same && k < want.size(); ++k)
            same = got.per_instance[k].object_id == want[k].object_id &&
                   static_cast<int>(got.per_instance[k].verdict) == static_cast<int>(want[k].verdict);
        if (!same) ++mismatches;
        ++pairs;
    }
    r.require(mismatches == 0, std::to_string(mismatches) + "/1000 pairs disagree");
    return r;
}

// 4. Vacuous truth and the three short-circuit identities.
Outcome vacuous_and_short_circuit() {
    Outcome r;
    const ClassModel m = ClassModelBuilder("V").add_class("Box").add_class("Item")
                             .associate("Holds", assoc_end("Box"), assoc_end("Item", Multiplicity::many(), "items"))
                             .build();
    ObjectModel o;
    o.objects.push_back({"b", "Box", {}, {}});
    const auto expect = [&](const std::string& body, bool want) {
        const auto parsed = ocl::parse_ocl("context Box inv t: " + body);
        if (!parsed.ok()) {
            r.require(false, "parse failed: " + body);
            return;
        }
        const ocl::EvalResult res = ocl::evaluate_constraint(parsed.constraints[0], o, m);
        const bool ok = res.per_instance.size() == 1 &&
                        res.per_instance[0].verdict == (want ? ocl::Verdict::True : ocl::Verdict::False);
        r.require(ok, body);
    };
    expect("self.items->forAll(i | false)", true);
    expect("self.items->exists(i | true)", false);
    expect("false and (1 / 0 = 1)", false);
    expect("true or (1 / 0 = 1)", true);
    expect("false implies (1 / 0 = 1)", true);
    // The guard expression must really fail on its own, or the identities prove nothing.
    const auto boom = ocl::parse_ocl("context Box inv t: (1 / 0 = 1)");
    r.require(boom.ok() && ocl::evaluate_constraint(boom.constraints[0], o, m).per_instance[0].verdict ==
                               ocl::Verdict::Error,
              "error operand does not fail");
    return r;
}

// 5. One-object fixtures, each producing exactly its designated code.
Outcome conformance_boundaries() {
    Outcome r;
    const auto model = parse_class_model(slurp(data("fixtures/conformance/boundary.buml.puml")));
    if (!model.model) {
        r.require(false, "boundary model does not parse");
        return r;
    }
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"mult_lower", codes::MultLower},
        {"mult_upper", codes::MultUpper},
        {"abstract_instance", codes::AbstractInstance},
        {"slot_type", codes::SlotType},
        {"unknown_classifier", codes::UnknownClassifier},
    };
    for (const auto& [file, code] : cases) {
        const auto objs = parse_object_model(slurp(data("fixtures/conformance/" + file + ".objs")), &*model.model);
        if (!objs.model || objs.model->objects.size() != 1) {
            r.require(false, file + " is not a one-object fixture");
            continue;
        }
        const Diagnostics d = check_conformance(*objs.model, *model.model);
        r.require(d.size() == 1 && d[0].code == code, file + " did not yield exactly " + code);
    }
    return r;
}

// 6. Inference round trip and enforcement idempotence.
Outcome flexible_round_trip() {
    Outcome r;
    Rng rng{4242};
    PopulationShape shape;
    shape.slot_noise = 0.15;
    shape.link_noise = 0.2;
    int bad_infer = 0, bad_enforce = 0;
    for (int i = 0; i < 200; ++i) {
        const ClassModel m = random_class_model(rng);
        const ObjectModel o = random_population(rng, m, shape);
        const ClassModel inferred = flex::infer_class_model(o).model;
        if (!check_conformance(o, inferred).empty() || !validate_class_model(inferred).empty()) ++bad_infer;
        for (const ClassModel* against : {&m, &inferred}) {
            const auto once = flex::enforce_conformance(o, *against);
            const auto twice = flex::enforce_conformance(once.pruned, *against);
            if (!(twice.pruned == once.pruned) || !twice.removed.empty()) ++bad_enforce;
        }
    }
    r.require(bad_infer == 0, std::to_string(bad_infer) + "/200 inferred models reject their source");
    r.require(bad_enforce == 0, std::to_string(bad_enforce) + " enforce runs were not idempotent");
    return r;
}

// 7. Byte equality with golden files, twice over.
Outcome generator_determinism() {
    Outcome r;
    const std::vector<std::pair<std::string, std::string>> models = {
        {"dpp", "fixtures/dpp/dpp.buml.puml"},
        {"library", "fixtures/models/library.buml.puml"},
        {"shapes", "fixtures/models/shapes.buml.puml"},
        {"fleet", "fixtures/models/fleet.buml.puml"},
        {"sensors", "fixtures/models/sensors.buml.puml"},
    };
    const codegen::GeneratorRegistry registry = codegen::default_registry();
    for (const auto& [name, path] : models) {
        const auto m = parse_class_model(slurp(data(path)));
        if (!m.model) {
            r.require(false, name + " does not parse");
            continue;
        }
        for (const std::string target : {"classes", "sql"}) {
            const fs::path golden = data("golden/" + name + "/" + target);
            std::size_t golden_files = 0;
            for (const auto& entry : fs::directory_iterator(golden)) golden_files += entry.is_regular_file();
            for (int run = 0; run < 2; ++run) {
                const codegen::GenerationResult g = codegen::generate(registry, target, *m.model);
                r.require(g.ok() && g.artifacts.size() == golden_files, name + "/" + target + ": artifact set differs");
                for (const auto& a : g.artifacts)
                    r.require(slurp(golden / a.relative_path) == a.content,
                              name + "/" + target + "/" + a.relative_path + " differs from golden");
            }
        }
    }
    return r;
}

// 8. FSM replay and the nondeterminism validator.
Outcome fsm_replay() {
    Outcome r;
    const auto m = fsm::parse_machine(slurp(data("fixtures/fsm/greeting.fsm")));
    const auto s = fsm::parse_scenario(slurp(data("fixtures/fsm/greeting.scenario")));
    if (!m.model || !s.ok()) {
        r.require(false, "greeting fixture does not parse");
        return r;
    }
    r.require(m.model->states.size() == 3, "greeting machine is not 3-state");
    r.require(fsm::validate_machine(*m.model).empty(), "greeting machine is invalid");
    const auto run = fsm::run_scenario(*m.model, s.steps);
    r.require(!run.failure, "scenario aborted");
    r.require(fsm::format_trace(run.session.trace) == slurp(data("fixtures/fsm/greeting.trace")),
              "trace differs from stored trace");

    const auto dup = fsm::parse_machine(slurp(data("fixtures/fsm/duplicate_transition.fsm")));
    bool rejected = false;
    if (dup.model)
        for (const auto& d : fsm::validate_machine(*dup.model))
            rejected |= d.code == codes::Nondeterministic && d.severity == Severity::Error;
    r.require(rejected, "duplicate-transition fixture accepted");
    return r;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
        double limit_s;  // 0: no runtime bound
    };
    const std::vector<Criterion> criteria = {
        {1, "DPP end-to-end", dpp_end_to_end, 1.0},
        {2, "parser round-trip (500 models)", parser_round_trip, 30.0},
        {3, "OCL oracle equivalence (1000 pairs)", ocl_oracle_equivalence, 60.0},
        {4, "vacuous truth and short-circuit", vacuous_and_short_circuit, 0},
        {5, "conformance boundary fixtures", conformance_boundaries, 0},
        {6, "flexible-modeling round trip (200 models)", flexible_round_trip, 0},
        {7, "generator determinism (5 golden models)", generator_determinism, 0},
        {8, "FSM replay and nondeterminism", fsm_replay, 0},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_s > 0 && secs >= c.limit_s) o.require(false, "over time limit");
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.3fs", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << timing;
        if (c.limit_s > 0) std::cout << " < " << c.limit_s << "s";
        std::cout << "]";
        if (!o.pass) std::cout << " -- " << o.detail;
        std::cout << '\n';
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
