#include <set>

#include "buml/metamodel/object_model.hpp"
#include "helpers.hpp"
#include "support/conformance_oracle.hpp"
#include "support/random_models.hpp"

using namespace buml;
using namespace buml::testing;

namespace {

ClassModel chain_abc() {
    return ClassModelBuilder("Chain")
        .add_class("A").attribute("a1", "int")
        .add_class("B").attribute("b1", "str")
        .add_class("C").attribute("c1", "bool")
        .generalize("A", "B")
        .generalize("B", "C")
        .build();
}

}  // namespace

TEST_CASE("validate: DPP model is well-formed") { CHECK(validate_class_model(dpp_model()).empty()); }

TEST_CASE("validate: empty model is well-formed") { CHECK(validate_class_model(ClassModel{}).empty()); }

TEST_CASE("validate: two-class generalization cycle") {
    const ClassModel m = ClassModelBuilder().add_class("A").add_class("B").generalize("A", "B").generalize("B", "A").build();
    CHECK(codes_of(validate_class_model(m)) == std::vector<std::string>{codes::GenCycle});
}

TEST_CASE("validate: individual well-formedness rules") {
    SUBCASE("duplicate class") {
        const ClassModel m = ClassModelBuilder().add_class("A").add_class("A").build();
        CHECK(codes_of(validate_class_model(m)) == std::vector<std::string>{codes::DupName});
    }
    SUBCASE("unknown property type") {
        const ClassModel m = ClassModelBuilder().add_class("A").attribute("x", "Nope").build();
        CHECK(codes_of(validate_class_model(m)) == std::vector<std::string>{codes::UnknownType});
    }
    SUBCASE("id must be primitive") {
        const ClassModel m = ClassModelBuilder().add_class("A").add_class("B").attribute("a", "A", true).build();
        CHECK(codes_of(validate_class_model(m)) == std::vector<std::string>{codes::IdNonPrimitive});
    }
    SUBCASE("redeclared inherited property") {
        const ClassModel m = ClassModelBuilder()
                                 .add_class("A").attribute("x", "int")
                                 .add_class("B").attribute("x", "int")
                                 .generalize("A", "B")
                                 .build();
        CHECK(codes_of(validate_class_model(m)) == std::vector<std::string>{codes::DupProperty});
    }
    SUBCASE("association to a missing class") {
        const ClassModel m = ClassModelBuilder().add_class("A").associate("R", assoc_end("A"), assoc_end("Z")).build();
        CHECK(codes_of(validate_class_model(m)) == std::vector<std::string>{codes::UnknownClass});
    }
    SUBCASE("self generalization") {
        const ClassModel m = ClassModelBuilder().add_class("A").generalize("A", "A").build();
        CHECK(codes_of(validate_class_model(m)) == std::vector<std::string>{codes::GenSelf});
    }
}

TEST_CASE("all_properties: identity, inheritance, chain") {
    const ClassModel flat = ClassModelBuilder().add_class("P").attribute("x", "int").attribute("y", "int").attribute("z", "int").build();
    std::vector<std::string> names;
    for (const auto& p : all_properties(flat, "P")) names.push_back(p.name);
    CHECK(names == std::vector<std::string>{"x", "y", "z"});

    const ClassModel m = chain_abc();
    names.clear();
    for (const auto& p : all_properties(m, "B")) names.push_back(p.name);
    CHECK(names == std::vector<std::string>{"a1", "b1"});
    names.clear();
    for (const auto& p : all_properties(m, "C")) names.push_back(p.name);
    CHECK(names == std::vector<std::string>{"a1", "b1", "c1"});

    CHECK_THROWS_AS(all_properties(m, "Q"), Error);
}

TEST_CASE("is_subclass_of: reflexive and directional") {
    const ClassModel m = chain_abc();
    CHECK(is_subclass_of(m, "A", "A"));
    CHECK(is_subclass_of(m, "B", "A"));
    CHECK_FALSE(is_subclass_of(m, "A", "B"));
    CHECK(is_subclass_of(m, "C", "A"));
}

TEST_CASE("conformance: DPP population conforms") { CHECK(check_conformance(dpp_objects(), dpp_model()).empty()); }

TEST_CASE("conformance: zero stage links on a 1..* end") {
    const ClassModel m = ClassModelBuilder()
                             .add_class("ProductPassport").attribute("code", "str", true)
                             .add_class("Stage")
                             .associate("PassportStages", assoc_end("ProductPassport", Multiplicity::exactly(1)),
                                        assoc_end("Stage", Multiplicity::range(1, std::nullopt), "stages"))
                             .build();
    ObjectModel o;
    o.objects.push_back({"p1", "ProductPassport", {{"code", Value::string("DPP-001"), {}}}, {}});
    CHECK(codes_of(check_conformance(o, m)) == std::vector<std::string>{codes::MultLower});
}

TEST_CASE("conformance: ill-typed slot") {
    const ClassModel m = ClassModelBuilder().add_class("P").attribute("count", "int").build();
    ObjectModel o;
    o.objects.push_back({"p1", "P", {{"count", Value::string("three"), {}}}, {}});
    CHECK(codes_of(check_conformance(o, m)) == std::vector<std::string>{codes::SlotType});
}

TEST_CASE("value_fits: widening lattice") {
    const ClassModel m = ClassModelBuilder().add_enum("Color", {"Red"}).build();
    const auto prop = [](std::string type, bool optional = false) { return Property{"p", std::move(type), false, optional, {}}; };
    CHECK(value_fits(m, prop("float"), Value::integer(1)));
    CHECK_FALSE(value_fits(m, prop("int"), Value::real(1.0)));
    CHECK(value_fits(m, prop("str"), Value::boolean(true)));
    CHECK(value_fits(m, prop("Color"), Value::enumeration("Color", "Red")));
    CHECK_FALSE(value_fits(m, prop("Color"), Value::enumeration("Color", "Blue")));
    CHECK_FALSE(value_fits(m, prop("str"), Value::null()));
    CHECK(value_fits(m, prop("str", true), Value::null()));
}

TEST_CASE("property: validate is pure and all_properties has unique names") {
    Rng rng{101};
    for (int i = 0; i < 200; ++i) {
        const ClassModel m = random_class_model(rng);
        const Diagnostics first = validate_class_model(m);
        CHECK(first.empty());
        CHECK(first == validate_class_model(m));
        for (const auto& c : m.classes) {
            std::set<std::string> seen;
            for (const auto& p : all_properties(m, c.name)) CHECK(seen.insert(p.name).second);
        }
    }
}

TEST_CASE("property: is_subclass_of is a partial order") {
    Rng rng{202};
    for (int i = 0; i < 100; ++i) {
        const ClassModel m = random_class_model(rng);
        for (const auto& a : m.classes) {
            CHECK(is_subclass_of(m, a.name, a.name));
            for (const auto& b : m.classes) {
                if (a.name != b.name && is_subclass_of(m, a.name, b.name)) CHECK_FALSE(is_subclass_of(m, b.name, a.name));
                for (const auto& c : m.classes)
                    if (is_subclass_of(m, a.name, b.name) && is_subclass_of(m, b.name, c.name))
                        CHECK(is_subclass_of(m, a.name, c.name));
            }
        }
    }
}

TEST_CASE("property: conformance agrees with brute-force enumeration") {
    Rng rng{303};
    PopulationShape shape;
    shape.max_objects = 8;  // plus up to two injected faults
    shape.slot_noise = 0.15;
    shape.link_noise = 0.2;
    for (int i = 0; i < 300; ++i) {
        const ClassModel m = random_class_model(rng);
        ObjectModel o = random_population(rng, m, shape);
        if (!o.objects.empty() && chance(rng, 0.2)) o.objects.push_back(o.objects.front());  // duplicate id
        if (chance(rng, 0.1)) o.objects.push_back({"ghost", "Ghost", {}, {}});
        REQUIRE(o.objects.size() <= 10);
        CHECK(code_subjects(check_conformance(o, m)) == oracle_conformance(o, m));
    }
}
