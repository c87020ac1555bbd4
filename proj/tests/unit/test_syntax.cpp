#include "helpers.hpp"
#include "support/random_models.hpp"

using namespace buml;
using namespace buml::testing;

namespace {

const char* kPassport = "@startuml\nclass ProductPassport {\n  code : str {id}\n  product_name : str\n  brand : str\n}\n@enduml";

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

TEST_CASE("parse: one class with three properties") {
    const ClassModel m = model_from(kPassport);
    REQUIRE(m.classes.size() == 1);
    const ClassDef& c = m.classes[0];
    CHECK(c.name == "ProductPassport");
    REQUIRE(c.properties.size() == 3);
    CHECK(c.properties[0].name == "code");
    CHECK(c.properties[0].is_id);
    CHECK(c.properties[1].name == "product_name");
    CHECK(c.properties[2].name == "brand");
    CHECK_FALSE(c.properties[2].is_id);
}

TEST_CASE("parse: empty model") {
    const auto r = parse_class_model("@startuml\n@enduml");
    REQUIRE(r.model);
    CHECK(r.model->classes.empty());
    CHECK(r.diagnostics.empty());
}

TEST_CASE("parse: stereotypes are unsupported") {
    const auto r = parse_class_model("@startuml\nclass A <<weird>>\n@enduml");
    CHECK_FALSE(r.model);
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].code == codes::UnsupportedConstruct);
    REQUIRE(r.diagnostics[0].location);
    CHECK(r.diagnostics[0].location->line == 2);
}

TEST_CASE("parse: validation findings are attached when asked") {
    const char* text = "@startuml\nclass A\nclass B\nA <|-- B\nB <|-- A\n@enduml";
    const auto checked = parse_class_model(text);
    CHECK_FALSE(checked.model);
    CHECK(codes_of(checked.diagnostics) == std::vector<std::string>{codes::GenCycle});
    const auto raw = parse_class_model(text, {}, false);
    CHECK(raw.model);
}

TEST_CASE("parse: associations, roles, composition, comments") {
    const ClassModel m = model_from(
        "@startuml Shop ' trailing comment\n"
        "class Order\n"
        "class Line\n"
        "Order \"order 1\" *-- \"lines 1..*\" Line : Contains\n"
        "@enduml\n");
    CHECK(m.name == "Shop");
    REQUIRE(m.associations.size() == 1);
    const Association& a = m.associations[0];
    CHECK(a.name == "Contains");
    CHECK(a.ends[0].is_composite);
    CHECK_FALSE(a.ends[1].is_composite);
    CHECK(a.ends[0].role == std::optional<std::string>{"order"});
    CHECK(a.ends[1].multiplicity == Multiplicity::range(1, std::nullopt));
}

TEST_CASE("serialize: empty model and association line") {
    CHECK(serialize_class_model(ClassModel{}) == "@startuml\n@enduml\n");
    const ClassModel m = ClassModelBuilder()
                             .add_class("ProductPassport")
                             .add_class("Design")
                             .associate("Stages", assoc_end("ProductPassport", Multiplicity::exactly(1)),
                                        assoc_end("Design", Multiplicity::many()))
                             .build();
    const std::string text = serialize_class_model(m);
    CHECK(text.find("ProductPassport \"1\" -- \"*\" Design : Stages\n") != std::string::npos);
    CHECK(model_from(text) == m);
}

TEST_CASE("serialize: DPP single class is a fixed point") {
    const ClassModel m = model_from(kPassport);
    const std::string once = serialize_class_model(m);
    CHECK(serialize_class_model(model_from(once)) == once);
}

TEST_CASE("serialize: invalid model throws") {
    const ClassModel m = ClassModelBuilder().add_class("A").add_class("A").build();
    CHECK_THROWS_AS(serialize_class_model(m), Error);
}

TEST_CASE("objects: parse examples") {
    const ObjectModel one = objects_from("@startobjects\nobject p1 : ProductPassport\np1.code = \"DPP-001\"\n@endobjects");
    REQUIRE(one.objects.size() == 1);
    REQUIRE(one.objects[0].slots.size() == 1);
    CHECK(one.objects[0].slots[0].value == Value::string("DPP-001"));

    CHECK(objects_from("@startobjects\n@endobjects").objects.empty());

    const auto dup = parse_object_model("@startobjects\nobject p1 : X\nobject p1 : X\n@endobjects");
    CHECK_FALSE(dup.model);
    CHECK(codes_of(dup.diagnostics) == std::vector<std::string>{codes::DupObject});
}

TEST_CASE("objects: literal kinds and bare enum literals") {
    const ClassModel m = model_from("@startuml\nenum Color {\n  Red\n}\nclass T {\n  c : Color\n}\n@enduml");
    const ObjectModel o = objects_from(
        "@startobjects\nobject t : T\nt.c = Red\nt.i = -4\nt.f = 2.5\nt.b = false\nt.n = null\nt.e = Color::Red\n@endobjects",
        &m);
    const auto& s = o.objects[0].slots;
    REQUIRE(s.size() == 6);
    CHECK(s[0].value == Value::enumeration("Color", "Red"));
    CHECK(s[1].value == Value::integer(-4));
    CHECK(s[2].value == Value::real(2.5));
    CHECK(s[3].value == Value::boolean(false));
    CHECK(s[4].value.is_null());
    CHECK(s[5].value == s[0].value);
}

TEST_CASE("objects: serialization round trip on the DPP population") {
    const ObjectModel o = dpp_objects();
    const std::string text = serialize_object_model(o);
    CHECK(objects_from(text) == o);
    CHECK(serialize_object_model(objects_from(text)) == text);
}

TEST_CASE("property: class model round trip and deterministic serialization") {
    Rng rng{7};
    ModelShape shape;
    shape.max_properties = 5;
    for (int i = 0; i < 300; ++i) {
        const ClassModel m = random_class_model(rng, shape);
        const std::string text = serialize_class_model(m);
        const auto r = parse_class_model(text);
        REQUIRE_MESSAGE(r.model, text);
        CHECK(*r.model == m);
        CHECK(serialize_class_model(*r.model) == text);
    }
}

TEST_CASE("property: error spans stay inside the input") {
    Rng rng{11};
    const std::string junk = "{}\"*-<|:.' \n0..abstract";
    for (int i = 0; i < 400; ++i) {
        std::string text = serialize_class_model(random_class_model(rng));
        const int edits = pick(rng, 1, 4);
        for (int e = 0; e < edits && !text.empty(); ++e) {
            const std::size_t at = static_cast<std::size_t>(pick(rng, 0, static_cast<int>(text.size()) - 1));
            if (chance(rng, 0.5)) text.erase(at, 1);
            else text.insert(at, 1, junk[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(junk.size()) - 1))]);
        }
        const auto lines = split_lines(text);
        for (const auto& d : parse_class_model(text).diagnostics) {
            if (d.severity != Severity::Error) continue;
            REQUIRE_MESSAGE(d.location, format_diagnostic(d));
            CHECK(d.location->line >= 1);
            CHECK(d.location->line <= static_cast<int>(lines.size()));
            if (d.location->line >= 1 && d.location->line <= static_cast<int>(lines.size())) {
                CHECK(d.location->column >= 1);
                CHECK(d.location->column <= static_cast<int>(lines[static_cast<std::size_t>(d.location->line - 1)].size()) + 1);
            }
        }
    }
}
