#include "line_lexer.hpp"

#include <array>
#include <cctype>

namespace buml::syntax {

namespace {

constexpr std::array<std::string_view, 9> kMultiPunct = {"<|--", "*--", "--*", "--", "->", "::", "..", "<<", ">>"};
constexpr std::string_view kSinglePunct = "{}:=.()[],*-+#<>|~!;/&%?$^";

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        auto line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = nl + 1;
    }
    if (!lines.empty() && !lines.back().empty() && lines.back().back() == '\r') lines.back().remove_suffix(1);
    return lines;
}

std::vector<Token> lex_line(std::string_view line, const LexOptions& opts) {
    std::vector<Token> toks;
    std::size_t i = 0;
    bool spaced = true;
    auto col = [&](std::size_t at) { return static_cast<int>(at) + 1; };
    while (i < line.size()) {
        const char c = line[i];
        if (c == ' ' || c == '\t') {
            ++i;
            spaced = true;
            continue;
        }
        if (c == opts.comment && (opts.comment_anywhere || toks.empty())) break;
        const std::size_t start = i;
        if (c == '@' && i + 1 < line.size() && ident_start(line[i + 1])) {
            ++i;
            while (i < line.size() && ident_char(line[i])) ++i;
            toks.push_back({TokKind::Directive, std::string{line.substr(start, i - start)}, col(start), spaced});
        } else if (ident_start(c)) {
            while (i < line.size() && ident_char(line[i])) ++i;
            toks.push_back({TokKind::Ident, std::string{line.substr(start, i - start)}, col(start), spaced});
        } else if (digit(c)) {
            while (i < line.size() && digit(line[i])) ++i;
            bool real = false;
            if (i + 1 < line.size() && line[i] == '.' && digit(line[i + 1])) {
                real = true;
                ++i;
                while (i < line.size() && digit(line[i])) ++i;
            }
            if (i < line.size() && (line[i] == 'e' || line[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < line.size() && (line[j] == '+' || line[j] == '-')) ++j;
                if (j < line.size() && digit(line[j])) {
                    real = true;
                    i = j;
                    while (i < line.size() && digit(line[i])) ++i;
                }
            }
            toks.push_back({real ? TokKind::Real : TokKind::Int, std::string{line.substr(start, i - start)}, col(start),
                            spaced});
        } else if (c == '"') {
            std::string value;
            ++i;
            bool closed = false;
            while (i < line.size()) {
                char d = line[i++];
                if (d == '"') {
                    closed = true;
                    break;
                }
                if (d == '\\' && i < line.size()) {
                    char e = line[i++];
                    switch (e) {
                        case 'n': value += '\n'; break;
                        case 't': value += '\t'; break;
                        case 'r': value += '\r'; break;
                        case '"': value += '"'; break;
                        case '\\': value += '\\'; break;
                        default:
                            toks.push_back({TokKind::Bad, std::string{"unknown escape '\\"} + e + "'", col(i - 2), spaced});
                            return toks;
                    }
                } else {
                    value += d;
                }
            }
            if (!closed) {
                toks.push_back({TokKind::Bad, "unterminated string literal", col(start), spaced});
                return toks;
            }
            toks.push_back({TokKind::String, std::move(value), col(start), spaced});
        } else {
            bool matched = false;
            for (auto p : kMultiPunct) {
                if (line.substr(i, p.size()) == p) {
                    toks.push_back({TokKind::Punct, std::string{p}, col(start), spaced});
                    i += p.size();
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                if (kSinglePunct.find(c) != std::string_view::npos) {
                    toks.push_back({TokKind::Punct, std::string(1, c), col(start), spaced});
                    ++i;
                } else {
                    toks.push_back({TokKind::Bad, "unexpected character", col(start), spaced});
                    return toks;
                }
            }
        }
        spaced = false;
    }
    return toks;
}

}  // namespace buml::syntax
