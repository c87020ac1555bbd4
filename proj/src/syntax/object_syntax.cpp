#include <charconv>
#include <set>

#include "buml/syntax/plantuml.hpp"
#include "line_lexer.hpp"
#include "literal.hpp"

namespace buml {

namespace {

using syntax::Token;
using syntax::TokKind;

class ObjectParser {
public:
    ObjectParser(std::string_view text, const ClassModel* model, std::string_view file)
        : text_(text), model_(model), file_(file) {}

    ParseResult<ObjectModel> run() {
        const auto lines = syntax::split_lines(text_);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            line_no_ = static_cast<int>(i) + 1;
            auto toks = syntax::lex_line(lines[i]);
            if (toks.empty()) continue;
            if (toks.back().kind == TokKind::Bad) {
                error(codes::Syntax, toks.back().text, toks.back().column);
                if (state_ == State::Preamble) state_ = State::Body;
                continue;
            }
            handle(toks);
        }
        line_no_ = lines.empty() ? 1 : static_cast<int>(lines.size());
        if (state_ == State::Preamble) error(codes::Syntax, "missing '@startobjects'", 1);
        else if (state_ == State::Body) error(codes::Syntax, "missing '@endobjects'", 1);

        ParseResult<ObjectModel> result;
        result.diagnostics = std::move(diags_);
        if (!has_errors(result.diagnostics)) result.model = std::move(objects_);
        return result;
    }

private:
    enum class State { Preamble, Body, Done };

    SourceSpan span(int column) const { return SourceSpan{std::string{file_}, line_no_, column}; }

    void error(const char* code, std::string message, int column, std::string subject = {}) {
        diags_.push_back(make_error(code, std::move(message), span(column), std::move(subject)));
    }

    void handle(const std::vector<Token>& toks) {
        const Token& t0 = toks[0];
        if (state_ == State::Done) {
            if (!trailing_reported_) error(codes::Syntax, "content after '@endobjects'", t0.column);
            trailing_reported_ = true;
            return;
        }
        if (state_ == State::Preamble) {
            if (t0.kind == TokKind::Directive && t0.text == "@startobjects") {
                state_ = State::Body;
                std::size_t i = 1;
                if (i < toks.size() && toks[i].kind == TokKind::Ident) objects_.name = toks[i++].text;
                if (i < toks.size())
                    error(codes::Syntax, "unexpected '" + toks[i].text + "' after '@startobjects'", toks[i].column);
                return;
            }
            error(codes::Syntax, "expected '@startobjects'", t0.column);
            state_ = State::Body;
        }
        if (t0.kind == TokKind::Directive) {
            if (t0.text == "@endobjects") {
                state_ = State::Done;
                if (toks.size() > 1) error(codes::Syntax, "unexpected '" + toks[1].text + "'", toks[1].column);
            } else {
                error(codes::Syntax, "unexpected directive '" + t0.text + "'", t0.column);
            }
            return;
        }
        if (t0.is_ident("object") && (toks.size() < 2 || !toks[1].is_punct("."))) {
            object_decl(toks);
        } else if (t0.is_ident("link") && (toks.size() < 2 || !toks[1].is_punct("."))) {
            link_decl(toks);
        } else if (t0.kind == TokKind::Ident && toks.size() > 1 && toks[1].is_punct(".")) {
            slot_decl(toks);
        } else {
            error(codes::Syntax, "expected 'object', 'link' or a slot assignment", t0.column);
        }
    }

    void object_decl(const std::vector<Token>& toks) {
        if (toks.size() != 4 || toks[1].kind != TokKind::Ident || !toks[2].is_punct(":") ||
            toks[3].kind != TokKind::Ident) {
            error(codes::Syntax, "expected 'object <id> : <Class>'", toks.size() > 1 ? toks[1].column : toks[0].column);
            return;
        }
        const std::string& id = toks[1].text;
        if (!ids_.insert(id).second) {
            error(codes::DupObject, "object id '" + id + "' is declared more than once", toks[1].column, id);
            return;
        }
        objects_.objects.push_back(ObjectDef{id, toks[3].text, {}, Origin{span(toks[0].column)}});
    }

    void link_decl(const std::vector<Token>& toks) {
        if (toks.size() != 6 || toks[1].kind != TokKind::Ident || !toks[2].is_punct("--") ||
            toks[3].kind != TokKind::Ident || !toks[4].is_punct(":") || toks[5].kind != TokKind::Ident) {
            error(codes::Syntax, "expected 'link <id> -- <id> : <Association>'",
                  toks.size() > 1 ? toks[1].column : toks[0].column);
            return;
        }
        objects_.links.push_back(Link{toks[5].text, {toks[1].text, toks[3].text}, Origin{span(toks[0].column)}});
    }

    void slot_decl(const std::vector<Token>& toks) {
        if (toks.size() < 5 || toks[2].kind != TokKind::Ident || !toks[3].is_punct("=")) {
            error(codes::Syntax, "expected '<id>.<property> = <value>'", toks[0].column);
            return;
        }
        const std::string& id = toks[0].text;
        const std::string& prop = toks[2].text;
        ObjectDef* obj = nullptr;
        for (auto& o : objects_.objects)
            if (o.id == id) obj = &o;
        if (!obj) {
            error(codes::UnknownObject, "slot for undeclared object '" + id + "'", toks[0].column, id);
            return;
        }
        if (obj->find_slot(prop)) {
            error(codes::DupSlot, "slot '" + id + "." + prop + "' is set more than once", toks[2].column, id + "." + prop);
            return;
        }
        std::size_t i = 4;
        auto lit = syntax::parse_literal(toks, i);
        if (!lit.value) {
            error(codes::Syntax, lit.error, lit.column);
            return;
        }
        Value value = std::move(*lit.value);
        if (lit.bare_identifier) {
            auto resolved = resolve_bare(*obj, prop, lit.bare_identifier_text);
            if (!resolved) {
                error(codes::Syntax,
                      "bare name '" + lit.bare_identifier_text + "' is not a value; write <Enum>::<Literal>", toks[4].column);
                return;
            }
            value = std::move(*resolved);
        }
        if (i < toks.size()) {
            error(codes::Syntax, "unexpected '" + toks[i].text + "' after value", toks[i].column);
            return;
        }
        obj->slots.push_back(AttributeLink{prop, std::move(value), Origin{span(toks[0].column)}});
    }

    std::optional<Value> resolve_bare(const ObjectDef& obj, const std::string& prop, const std::string& name) const {
        if (!model_ || !model_->find_class(obj.classifier)) return std::nullopt;
        for (const Property& p : all_properties(*model_, obj.classifier)) {
            if (p.name != prop) continue;
            const EnumDef* e = model_->find_enum(p.type);
            if (e && e->has_literal(name)) return Value::enumeration(e->name, name);
        }
        return std::nullopt;
    }

    std::string_view text_;
    const ClassModel* model_;
    std::string_view file_;
    ObjectModel objects_;
    Diagnostics diags_;
    std::set<std::string> ids_;
    State state_ = State::Preamble;
    int line_no_ = 1;
    bool trailing_reported_ = false;
};

}  // namespace

ParseResult<ObjectModel> parse_object_model(std::string_view text, const ClassModel* model, std::string_view file) {
    return ObjectParser{text, model, file}.run();
}

std::string serialize_object_model(const ObjectModel& objects) {
    std::string out = "@startobjects";
    if (!objects.name.empty()) out += " " + objects.name;
    out += "\n";
    for (const ObjectDef& o : objects.objects) {
        out += "object " + o.id + " : " + o.classifier + "\n";
        for (const AttributeLink& s : o.slots) out += o.id + "." + s.property + " = " + to_literal(s.value) + "\n";
    }
    for (const Link& l : objects.links)
        out += "link " + l.ends[0] + " -- " + l.ends[1] + " : " + l.association + "\n";
    out += "@endobjects\n";
    return out;
}

}  // namespace buml
