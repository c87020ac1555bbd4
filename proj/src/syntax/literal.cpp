#include "literal.hpp"

#include <charconv>
#include <cmath>

namespace buml::syntax {

LiteralResult parse_literal(const std::vector<Token>& toks, std::size_t& i) {
    LiteralResult r;
    if (i >= toks.size()) {
        r.error = "expected a value";
        r.column = toks.empty() ? 1 : toks.back().column;
        return r;
    }
    r.column = toks[i].column;
    bool negative = false;
    if (toks[i].is_punct("-") && i + 1 < toks.size() &&
        (toks[i + 1].kind == TokKind::Int || toks[i + 1].kind == TokKind::Real)) {
        negative = true;
        ++i;
    }
    const Token& t = toks[i];
    switch (t.kind) {
        case TokKind::Int: {
            const std::string text = (negative ? "-" : "") + t.text;
            std::int64_t v = 0;
            auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc{} || p != text.data() + text.size()) {
                r.error = "integer literal '" + text + "' is out of range";
                return r;
            }
            r.value = Value::integer(v);
            ++i;
            return r;
        }
        case TokKind::Real: {
            const std::string text = (negative ? "-" : "") + t.text;
            double v = 0;
            auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc{} || p != text.data() + text.size() || !std::isfinite(v)) {
                r.error = "real literal '" + text + "' is out of range";
                return r;
            }
            r.value = Value::real(v);
            ++i;
            return r;
        }
        case TokKind::String:
            r.value = Value::string(t.text);
            ++i;
            return r;
        case TokKind::Ident:
            if (t.text == "true" || t.text == "false") {
                r.value = Value::boolean(t.text == "true");
                ++i;
                return r;
            }
            if (t.text == "null") {
                r.value = Value::null();
                ++i;
                return r;
            }
            if (i + 2 < toks.size() && toks[i + 1].is_punct("::") && toks[i + 2].kind == TokKind::Ident) {
                r.value = Value::enumeration(t.text, toks[i + 2].text);
                i += 3;
                return r;
            }
            r.value = Value::null();
            r.bare_identifier = true;
            r.bare_identifier_text = t.text;
            ++i;
            return r;
        default:
            r.error = "expected a value, found '" + t.text + "'";
            return r;
    }
}

}  // namespace buml::syntax
