#pragma once

// Textual concrete syntax: a PlantUML class-diagram subset for class models
// (`.buml.puml`) and a line-oriented `@startobjects` block for object
// models (`.objs`).
//
// Class model grammar:
//
//   model     := "@startuml" [ID] NL decl* "@enduml"
//   decl      := classDecl | enumDecl | assoc | gen
//   classDecl := ["abstract"] "class" ID ["{" NL attr* "}"]
//   attr      := [VIS] ID ":" typeName ["[0..1]"] ["{id}"] NL      VIS := + | - | #
//   typeName  := int | float | str | bool | ID
//   enumDecl  := "enum" ID "{" NL (ID NL)* "}"
//   assoc     := ID [END] ("--" | "*--" | "--*") [END] ID [":" ID]
//   END       := '"' [role] [mult] '"'        mult := 1 | * | 0..1 | 1..* | n..m
//   gen       := ID "<|--" ID                  (left side is the general)
//
// `'` starts a comment anywhere outside string literals.
//
// Object model syntax:
//
//   @startobjects [ID]
//   object p1 : ProductPassport
//   p1.code = "DPP-001"
//   link p1 -- d1 : PassportStages
//   @endobjects
//
// Values: integers, reals (with `.` or exponent), "strings", true, false,
// null, Enum::Literal. A bare literal name is accepted when the class model
// types the slot with an enumeration.

#include <optional>
#include <string>
#include <string_view>

#include "buml/diagnostic.hpp"
#include "buml/metamodel/class_model.hpp"
#include "buml/metamodel/object_model.hpp"

namespace buml {

/// model present iff diagnostics hold no error.
template <class Model>
struct ParseResult {
    std::optional<Model> model;
    Diagnostics diagnostics;

    bool ok() const { return model.has_value(); }
};

/// Parses and, when `validate` is set, appends validate_class_model findings.
ParseResult<ClassModel> parse_class_model(std::string_view text, std::string_view file = {}, bool validate = true);

/// Canonical text. Throws Error when the model is not valid.
std::string serialize_class_model(const ClassModel& model);

/// `model` is optional; it is consulted only to resolve bare enum literals.
ParseResult<ObjectModel> parse_object_model(std::string_view text, const ClassModel* model = nullptr,
                                            std::string_view file = {});

std::string serialize_object_model(const ObjectModel& objects);

}  // namespace buml
