#include <map>
#include <set>
#include <sstream>

#include "buml/names.hpp"
#include "buml/syntax/plantuml.hpp"
#include "line_lexer.hpp"

namespace buml {

namespace {

using syntax::Token;
using syntax::TokKind;

// PlantUML keywords outside the supported subset.
const std::set<std::string, std::less<>> kForeignKeywords = {
    "interface", "package",   "namespace", "note",    "skinparam", "hide",     "show",    "title",
    "legend",    "annotation", "entity",   "together", "left",     "right",    "top",     "bottom",
    "header",    "footer",    "caption",   "remove",  "set",       "scale",    "struct",  "exception",
    "metaclass", "protocol",  "stereotype", "usecase", "actor",    "object",   "map",     "json",
    "rectangle", "circle",    "diamond",   "newpage", "allowmixing", "allow_mixing", "class_diagram",
    "dataclass", "record",    "abstract_class", "page", "center", "footbox"};

bool is_relation_op(const Token& t) {
    return t.kind == TokKind::Punct && (t.text == "--" || t.text == "*--" || t.text == "--*" || t.text == "<|--");
}

bool arrowish(const Token& t) {
    if (t.kind != TokKind::Punct) return false;
    for (char c : t.text)
        if (std::string_view{"-.<>|*#+o"}.find(c) == std::string_view::npos) return false;
    return true;
}

class ClassParser {
public:
    ClassParser(std::string_view text, std::string_view file) : text_(text), file_(file) {}

    ParseResult<ClassModel> run(bool validate) {
        const auto lines = syntax::split_lines(text_);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            line_no_ = static_cast<int>(i) + 1;
            auto toks = syntax::lex_line(lines[i]);
            if (!toks.empty() && toks.back().kind == TokKind::Bad) {
                error(codes::Syntax, toks.back().text, toks.back().column);
                if (mode_ == Mode::ClassBody || mode_ == Mode::EnumBody || mode_ == Mode::Discard) continue;
                if (mode_ == Mode::Preamble) mode_ = Mode::Model;
                continue;
            }
            handle(toks);
        }
        finish(lines);

        ParseResult<ClassModel> result;
        result.diagnostics = std::move(diags_);
        if (!has_errors(result.diagnostics) && validate) {
            auto v = validate_class_model(model_);
            result.diagnostics.insert(result.diagnostics.end(), v.begin(), v.end());
        }
        if (!has_errors(result.diagnostics)) result.model = std::move(model_);
        return result;
    }

private:
    enum class Mode { Preamble, Model, ClassBody, EnumBody, Discard, Done };

    SourceSpan span(int column) const { return SourceSpan{std::string{file_}, line_no_, column}; }

    void error(const char* code, std::string message, int column) {
        diags_.push_back(make_error(code, std::move(message), span(column)));
    }

    void handle(const std::vector<Token>& toks) {
        if (toks.empty()) return;
        switch (mode_) {
            case Mode::Preamble:
                if (toks[0].kind == TokKind::Directive && toks[0].text == "@startuml") {
                    start(toks);
                    return;
                }
                error(codes::Syntax, "expected '@startuml'", toks[0].column);
                mode_ = Mode::Model;
                declaration(toks);
                return;
            case Mode::Model: declaration(toks); return;
            case Mode::ClassBody: class_member(toks); return;
            case Mode::EnumBody: enum_literal(toks); return;
            case Mode::Discard:
                if (toks[0].is_punct("}")) mode_ = Mode::Model;
                return;
            case Mode::Done:
                if (!reported_trailing_) error(codes::Syntax, "content after '@enduml'", toks[0].column);
                reported_trailing_ = true;
                return;
        }
    }

    void start(const std::vector<Token>& toks) {
        mode_ = Mode::Model;
        std::size_t i = 1;
        if (i < toks.size() && toks[i].kind == TokKind::Ident) model_.name = toks[i++].text;
        if (i < toks.size()) error(codes::Syntax, "unexpected '" + toks[i].text + "' after '@startuml'", toks[i].column);
    }

    void finish(const std::vector<std::string_view>& lines) {
        const int last = lines.empty() ? 1 : static_cast<int>(lines.size());
        line_no_ = last;
        switch (mode_) {
            case Mode::Preamble: error(codes::Syntax, "missing '@startuml'", 1); break;
            case Mode::ClassBody:
            case Mode::EnumBody:
            case Mode::Discard:
                line_no_ = body_line_;
                error(codes::Syntax, "unterminated declaration body", 1);
                line_no_ = last;
                [[fallthrough]];
            case Mode::Model: error(codes::Syntax, "missing '@enduml'", 1); break;
            case Mode::Done: break;
        }
    }

    void declaration(const std::vector<Token>& toks) {
        const Token& t0 = toks[0];
        if (t0.kind == TokKind::Directive) {
            if (t0.text == "@enduml") {
                mode_ = Mode::Done;
                if (toks.size() > 1) error(codes::Syntax, "unexpected '" + toks[1].text + "' after '@enduml'", toks[1].column);
            } else if (t0.text == "@startuml") {
                error(codes::Syntax, "nested '@startuml'", t0.column);
            } else {
                error(codes::UnsupportedConstruct, "directive '" + t0.text + "' is not supported", t0.column);
            }
            return;
        }
        if (t0.kind != TokKind::Ident) {
            if (t0.is_punct("!"))
                error(codes::UnsupportedConstruct, "preprocessor directives are not supported", t0.column);
            else
                error(codes::Syntax, "expected a declaration, found '" + t0.text + "'", t0.column);
            if (toks.back().is_punct("{")) enter_discard();
            return;
        }
        if (t0.text == "class" || t0.text == "abstract") {
            class_header(toks);
            return;
        }
        if (t0.text == "enum") {
            enum_header(toks);
            return;
        }
        // A class named like a keyword still works in relations.
        const bool relation_like = toks.size() > 1 && (toks[1].kind == TokKind::String || is_relation_op(toks[1]));
        if (kForeignKeywords.count(t0.text) && !relation_like) {
            error(codes::UnsupportedConstruct, "'" + t0.text + "' is not supported", t0.column);
            if (toks.back().is_punct("{")) enter_discard();
            return;
        }
        relation(toks);
    }

    void enter_discard() {
        mode_ = Mode::Discard;
        body_line_ = line_no_;
    }

    void class_header(const std::vector<Token>& toks) {
        std::size_t i = 0;
        bool is_abstract = false;
        if (toks[i].text == "abstract") {
            is_abstract = true;
            ++i;
        }
        if (i < toks.size() && toks[i].is_ident("class")) ++i;
        else if (!is_abstract) return;  // unreachable: caller checked
        if (i >= toks.size() || toks[i].kind != TokKind::Ident) {
            error(codes::Syntax, "expected class name", i < toks.size() ? toks[i].column : toks.back().column);
            if (toks.back().is_punct("{")) enter_discard();
            return;
        }
        const Token& name = toks[i++];
        bool body = false;
        bool ok = true;
        if (i < toks.size()) {
            const Token& t = toks[i];
            if (t.is_punct("{") && i + 1 == toks.size()) {
                body = true;
            } else if (t.is_punct("{") && i + 2 == toks.size() && toks[i + 1].is_punct("}")) {
                body = false;
            } else {
                ok = false;
                if (t.is_punct("<<") || t.is_punct("<"))
                    error(codes::UnsupportedConstruct,
                          t.text == "<<" ? "stereotypes are not supported" : "generic classes are not supported", t.column);
                else if (t.is_ident("extends") || t.is_ident("implements") || t.is_punct("#") || t.kind == TokKind::String)
                    error(codes::UnsupportedConstruct, "'" + t.text + "' in class header is not supported", t.column);
                else
                    error(codes::Syntax, "unexpected '" + t.text + "' in class header", t.column);
            }
        }
        if (!ok) {
            if (toks.back().is_punct("{")) enter_discard();
            return;
        }
        model_.classes.push_back(ClassDef{name.text, is_abstract, {}, Origin{span(toks[0].column)}});
        if (body) {
            mode_ = Mode::ClassBody;
            body_line_ = line_no_;
        }
    }

    void class_member(const std::vector<Token>& toks) {
        const Token& t0 = toks[0];
        if (t0.is_punct("}")) {
            mode_ = Mode::Model;
            if (toks.size() > 1) error(codes::Syntax, "unexpected '" + toks[1].text + "' after '}'", toks[1].column);
            return;
        }
        std::size_t i = 0;
        if (t0.is_punct("+") || t0.is_punct("-") || t0.is_punct("#")) {
            ++i;
        } else if (t0.is_punct("~")) {
            error(codes::UnsupportedConstruct, "package visibility '~' is not supported", t0.column);
            return;
        } else if (t0.is_punct("--") || t0.is_punct("..") || t0.is_punct("=") || t0.is_punct("__")) {
            error(codes::UnsupportedConstruct, "member separators are not supported", t0.column);
            return;
        } else if (t0.is_punct("{")) {
            error(codes::UnsupportedConstruct, "member modifiers are not supported", t0.column);
            return;
        }
        if (i >= toks.size() || toks[i].kind != TokKind::Ident) {
            const Token& bad = i < toks.size() ? toks[i] : toks.back();
            error(codes::Syntax, "expected attribute name", bad.column);
            return;
        }
        const Token& name = toks[i++];
        if (i < toks.size() && toks[i].is_punct("(")) {
            error(codes::UnsupportedConstruct, "operations are not supported", name.column);
            return;
        }
        if (i >= toks.size() || !toks[i].is_punct(":")) {
            error(codes::Syntax, "expected ':' after attribute name '" + name.text + "'",
                  i < toks.size() ? toks[i].column : name.column + static_cast<int>(name.text.size()));
            return;
        }
        ++i;
        if (i >= toks.size() || toks[i].kind != TokKind::Ident) {
            error(codes::Syntax, "expected type name", i < toks.size() ? toks[i].column : toks.back().column);
            return;
        }
        Property prop{name.text, toks[i++].text, false, false, Origin{span(name.column)}};
        if (i < toks.size() && (toks[i].is_punct("<") || toks[i].is_punct("["))) {
            if (toks[i].is_punct("<")) {
                error(codes::UnsupportedConstruct, "parameterized types are not supported", toks[i].column);
                return;
            }
            // [0..1] optional, [1] required
            const std::size_t open = i;
            std::string inner;
            ++i;
            while (i < toks.size() && !toks[i].is_punct("]")) inner += toks[i++].text;
            if (i >= toks.size()) {
                error(codes::Syntax, "unterminated '['", toks[open].column);
                return;
            }
            ++i;
            if (inner == "0..1") {
                prop.is_optional = true;
            } else if (inner != "1") {
                error(codes::UnsupportedConstruct, "attribute multiplicity [" + inner + "] is not supported",
                      toks[open].column);
                return;
            }
        }
        if (i < toks.size() && toks[i].is_punct("{")) {
            if (i + 2 < toks.size() && toks[i + 1].is_ident("id") && toks[i + 2].is_punct("}")) {
                prop.is_id = true;
                i += 3;
            } else {
                error(codes::UnsupportedConstruct, "only the {id} modifier is supported", toks[i].column);
                return;
            }
        }
        if (i < toks.size()) {
            error(codes::Syntax, "unexpected '" + toks[i].text + "' after attribute", toks[i].column);
            return;
        }
        model_.classes.back().properties.push_back(std::move(prop));
    }

    void enum_header(const std::vector<Token>& toks) {
        if (toks.size() < 2 || toks[1].kind != TokKind::Ident) {
            error(codes::Syntax, "expected enumeration name", toks.size() < 2 ? toks[0].column : toks[1].column);
            if (toks.back().is_punct("{")) enter_discard();
            return;
        }
        EnumDef e{toks[1].text, {}, Origin{span(toks[0].column)}};
        if (toks.size() == 2) {
            model_.enumerations.push_back(std::move(e));
            return;
        }
        if (toks[2].is_punct("{") && toks.size() == 3) {
            model_.enumerations.push_back(std::move(e));
            mode_ = Mode::EnumBody;
            body_line_ = line_no_;
            return;
        }
        if (toks[2].is_punct("{") && toks.size() == 4 && toks[3].is_punct("}")) {
            model_.enumerations.push_back(std::move(e));
            return;
        }
        if (toks[2].is_punct("<<"))
            error(codes::UnsupportedConstruct, "stereotypes are not supported", toks[2].column);
        else
            error(codes::Syntax, "unexpected '" + toks[2].text + "' in enumeration header", toks[2].column);
        if (toks.back().is_punct("{")) enter_discard();
    }

    void enum_literal(const std::vector<Token>& toks) {
        if (toks[0].is_punct("}")) {
            mode_ = Mode::Model;
            if (toks.size() > 1) error(codes::Syntax, "unexpected '" + toks[1].text + "' after '}'", toks[1].column);
            return;
        }
        if (toks[0].kind != TokKind::Ident) {
            error(codes::Syntax, "expected enumeration literal", toks[0].column);
            return;
        }
        if (toks.size() > 1) {
            error(codes::Syntax, "unexpected '" + toks[1].text + "' after literal", toks[1].column);
            return;
        }
        model_.enumerations.back().literals.push_back(toks[0].text);
    }

    struct EndSpec {
        std::optional<std::string> role;
        Multiplicity mult = Multiplicity::many();
    };

    std::optional<EndSpec> end_spec(const Token& t) {
        std::istringstream words{t.text};
        std::vector<std::string> parts;
        for (std::string w; words >> w;) parts.push_back(w);
        EndSpec spec;
        auto bad = [&](const std::string& why) -> std::optional<EndSpec> {
            error(codes::Syntax, why, t.column);
            return std::nullopt;
        };
        if (parts.size() > 2) return bad("association end \"" + t.text + "\" has too many parts");
        if (parts.size() == 2) {
            if (!is_identifier(parts[0])) return bad("'" + parts[0] + "' is not a role name");
            spec.role = parts[0];
            auto m = Multiplicity::parse(parts[1]);
            if (!m) return bad("'" + parts[1] + "' is not a multiplicity");
            spec.mult = *m;
        } else if (parts.size() == 1) {
            if (is_identifier(parts[0])) {
                spec.role = parts[0];
            } else {
                auto m = Multiplicity::parse(parts[0]);
                if (!m) return bad("'" + parts[0] + "' is not a multiplicity");
                spec.mult = *m;
            }
        }
        return spec;
    }

    void relation(const std::vector<Token>& toks) {
        std::size_t i = 1;
        const Token& left = toks[0];
        std::optional<Token> left_end, right_end;
        if (i < toks.size() && toks[i].kind == TokKind::String) left_end = toks[i++];
        if (i >= toks.size()) {
            error(codes::Syntax, "expected relation after '" + left.text + "'", left.column);
            return;
        }
        const Token& op = toks[i];
        if (!is_relation_op(op)) {
            // o-- (aggregation) lexes as identifier 'o' then '--'
            const bool aggregation = op.is_ident("o") && i + 1 < toks.size() && toks[i + 1].is_punct("--") &&
                                     !toks[i + 1].spaced_before;
            if (aggregation || arrowish(op)) {
                std::string arrow = op.text;
                for (std::size_t j = i + 1; j < toks.size() && !toks[j].spaced_before &&
                                            (toks[j].kind == TokKind::Punct || toks[j].is_ident("o"));
                     ++j)
                    arrow += toks[j].text;
                error(codes::UnsupportedConstruct, "relation '" + arrow + "' is not supported", op.column);
            } else {
                error(codes::Syntax, "unexpected '" + op.text + "'", op.column);
            }
            return;
        }
        // Arrows such as `-->` or `--|>` continue without whitespace.
        if (i + 1 < toks.size() && toks[i + 1].kind == TokKind::Punct && !toks[i + 1].spaced_before &&
            arrowish(toks[i + 1])) {
            error(codes::UnsupportedConstruct, "relation '" + op.text + toks[i + 1].text + "' is not supported",
                  op.column);
            return;
        }
        ++i;
        if (i < toks.size() && toks[i].kind == TokKind::String) right_end = toks[i++];
        if (i >= toks.size() || toks[i].kind != TokKind::Ident) {
            error(codes::Syntax, "expected class name after '" + op.text + "'",
                  i < toks.size() ? toks[i].column : op.column);
            return;
        }
        const Token& right = toks[i++];
        std::optional<std::string> name;
        if (i < toks.size() && toks[i].is_punct(":")) {
            ++i;
            if (i >= toks.size() || toks[i].kind != TokKind::Ident) {
                error(codes::Syntax, "expected association name after ':'", i < toks.size() ? toks[i].column : toks[i - 1].column);
                return;
            }
            name = toks[i++].text;
        }
        if (i < toks.size()) {
            if (toks[i].is_punct("<") || toks[i].is_punct(">"))
                error(codes::UnsupportedConstruct, "association direction markers are not supported", toks[i].column);
            else
                error(codes::Syntax, "unexpected '" + toks[i].text + "'", toks[i].column);
            return;
        }

        if (op.text == "<|--") {
            if (left_end || right_end || name) {
                error(codes::Syntax, "generalizations take no multiplicities or names", op.column);
                return;
            }
            model_.generalizations.push_back(Generalization{left.text, right.text, Origin{span(left.column)}});
            return;
        }

        std::optional<EndSpec> a = left_end ? end_spec(*left_end) : EndSpec{};
        std::optional<EndSpec> b = right_end ? end_spec(*right_end) : EndSpec{};
        if (!a || !b) return;
        if (!name) {
            const int k = ++unnamed_[{left.text, right.text}];
            name = left.text + "_" + right.text + "_" + std::to_string(k);
        }
        Association assoc{*name,
                          {AssociationEnd{left.text, a->role, a->mult, op.text == "*--"},
                           AssociationEnd{right.text, b->role, b->mult, op.text == "--*"}},
                          Origin{span(left.column)}};
        model_.associations.push_back(std::move(assoc));
    }

    std::string_view text_;
    std::string_view file_;
    ClassModel model_;
    Diagnostics diags_;
    Mode mode_ = Mode::Preamble;
    int line_no_ = 1;
    int body_line_ = 1;
    bool reported_trailing_ = false;
    std::map<std::pair<std::string, std::string>, int> unnamed_;
};

std::string end_text(const AssociationEnd& e) {
    std::string s = "\"";
    if (e.role) s += *e.role + " ";
    s += e.multiplicity.to_string();
    s += "\"";
    return s;
}

}  // namespace

ParseResult<ClassModel> parse_class_model(std::string_view text, std::string_view file, bool validate) {
    return ClassParser{text, file}.run(validate);
}

std::string serialize_class_model(const ClassModel& model) {
    auto diags = validate_class_model(model);
    if (has_errors(diags)) throw Error(codes::InvalidModel, "cannot serialize an invalid model: " + diags.front().message);

    std::string out = "@startuml";
    if (!model.name.empty()) out += " " + model.name;
    out += "\n";
    for (const ClassDef& c : model.classes) {
        out += c.is_abstract ? "abstract class " : "class ";
        out += c.name + " {\n";
        for (const Property& p : c.properties) {
            out += "  " + p.name + " : " + p.type;
            if (p.is_optional) out += " [0..1]";
            if (p.is_id) out += " {id}";
            out += "\n";
        }
        out += "}\n";
    }
    for (const EnumDef& e : model.enumerations) {
        out += "enum " + e.name + " {\n";
        for (const auto& lit : e.literals) out += "  " + lit + "\n";
        out += "}\n";
    }
    for (const Association& a : model.associations) {
        const char* op = a.ends[0].is_composite ? "*--" : (a.ends[1].is_composite ? "--*" : "--");
        out += a.ends[0].target + " " + end_text(a.ends[0]) + " " + op + " " + end_text(a.ends[1]) + " " +
               a.ends[1].target + " : " + a.name + "\n";
    }
    for (const Generalization& g : model.generalizations) out += g.general + " <|-- " + g.specific + "\n";
    out += "@enduml\n";
    return out;
}

}  // namespace buml
