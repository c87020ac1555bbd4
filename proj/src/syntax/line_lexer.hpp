#pragma once

// Tokenizer shared by the line-oriented formats (class models, object
// models, state machines, scenarios). One call per physical line.

#include <string>
#include <string_view>
#include <vector>

namespace buml::syntax {

enum class TokKind { Ident, Int, Real, String, Punct, Directive, Bad };

struct Token {
    TokKind kind;
    std::string text;   // raw spelling; unescaped contents for String
    int column;         // 1-based byte column
    bool spaced_before; // whitespace (or line start) precedes the token

    bool is(TokKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_punct(std::string_view t) const { return is(TokKind::Punct, t); }
    bool is_ident(std::string_view t) const { return is(TokKind::Ident, t); }
};

struct LexOptions {
    char comment = '\'';           // starts a comment that runs to end of line
    bool comment_anywhere = true;  // false: only when first non-blank char
};

/// Bad tokens carry an explanation in `text` and stop the scan.
std::vector<Token> lex_line(std::string_view line, const LexOptions& opts = {});

/// Splits on '\n', dropping a trailing '\r' from each line.
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace buml::syntax
