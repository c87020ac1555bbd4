#include "buml/ocl/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

namespace buml::ocl {

namespace {

enum class Tok { Ident, Int, Real, String, Op, End, Bad };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

const std::set<std::string, std::less<>> kReserved = {"context", "inv",  "and",   "or",   "not",   "implies", "if",
                                                      "then",    "else", "endif", "true", "false", "null",    "self"};

class Lexer {
public:
    Lexer(std::string_view text, int line, int column) : text_(text), line_(line), column_(column) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            if (pos_ >= text_.size()) {
                out.push_back({Tok::End, "end of input", line_, column_});
                return out;
            }
            Token t = next();
            const bool bad = t.kind == Tok::Bad;
            out.push_back(std::move(t));
            if (bad) {
                out.push_back({Tok::End, "end of input", line_, column_});
                return out;
            }
        }
    }

private:
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '-' && peek(1) == '-') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token next() {
        const int line = line_, col = column_;
        const std::size_t start = pos_;
        const char c = text_[pos_];
        auto digit = [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) advance();
            return {Tok::Ident, std::string{text_.substr(start, pos_ - start)}, line, col};
        }
        if (digit(c)) {
            bool real = false;
            while (digit(peek())) advance();
            if (peek() == '.' && digit(peek(1))) {
                real = true;
                advance();
                while (digit(peek())) advance();
            }
            if (peek() == 'e' || peek() == 'E') {
                std::size_t ahead = 1;
                if (peek(1) == '+' || peek(1) == '-') ahead = 2;
                if (digit(peek(ahead))) {
                    real = true;
                    for (std::size_t k = 0; k < ahead; ++k) advance();
                    while (digit(peek())) advance();
                }
            }
            return {real ? Tok::Real : Tok::Int, std::string{text_.substr(start, pos_ - start)}, line, col};
        }
        if (c == '\'') {
            advance();
            std::string value;
            while (pos_ < text_.size() && peek() != '\'') {
                if (peek() == '\n') break;
                if (peek() == '\\') {
                    advance();
                    const char e = peek();
                    if (e == 'n') value += '\n';
                    else if (e == 't') value += '\t';
                    else if (e == '\'' || e == '\\') value += e;
                    else return {Tok::Bad, "unknown escape in string literal", line, col};
                    advance();
                    continue;
                }
                value += peek();
                advance();
            }
            if (peek() != '\'') return {Tok::Bad, "unterminated string literal", line, col};
            advance();
            return {Tok::String, std::move(value), line, col};
        }
        for (std::string_view op : {"->", "<>", "<=", ">=", "::"}) {
            if (text_.substr(pos_, 2) == op) {
                advance();
                advance();
                return {Tok::Op, std::string{op}, line, col};
            }
        }
        if (std::string_view{".()|,:+-*/<>="}.find(c) != std::string_view::npos) {
            advance();
            return {Tok::Op, std::string(1, c), line, col};
        }
        return {Tok::Bad, std::string{"unexpected character '"} + c + "'", line, col};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
    int column_;
};

struct SyntaxError {
    std::string message;
    int line;
    int column;
};

class Parser {
public:
    Parser(std::vector<Token> toks, std::string_view file) : toks_(std::move(toks)), file_(file) {}

    ConstraintParseResult constraints() {
        ConstraintParseResult result;
        std::set<std::string> names;
        while (cur().kind != Tok::End) {
            if (cur().kind == Tok::Bad) {
                report(result.diagnostics, {cur().text, cur().line, cur().column});
                break;
            }
            const std::size_t start = pos_;
            try {
                OclConstraint c = constraint();
                if (!names.insert(c.name).second) {
                    result.diagnostics.push_back(make_error(codes::DupConstraint,
                                                            "constraint name '" + c.name + "' is used more than once",
                                                            c.span, c.name));
                    continue;
                }
                result.constraints.push_back(std::move(c));
            } catch (const SyntaxError& e) {
                report(result.diagnostics, e);
                // resynchronize on the next `context`, which may be the offending token
                if (pos_ == start && cur().kind != Tok::End) ++pos_;
                while (cur().kind != Tok::End && !is_kw("context")) ++pos_;
            }
        }
        return result;
    }

    ExpressionParseResult single_expression() {
        ExpressionParseResult result;
        try {
            ExprPtr e = expression();
            if (cur().kind != Tok::End) fail("unexpected '" + cur().text + "' after expression");
            result.expr = std::move(e);
        } catch (const SyntaxError& e) {
            report(result.diagnostics, e);
        }
        return result;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& peek_tok(std::size_t n = 1) const { return toks_[std::min(pos_ + n, toks_.size() - 1)]; }

    bool is_kw(std::string_view kw) const { return cur().kind == Tok::Ident && cur().text == kw; }
    bool is_op(std::string_view op) const { return cur().kind == Tok::Op && cur().text == op; }

    [[noreturn]] void fail(const std::string& message) const { throw SyntaxError{message, cur().line, cur().column}; }

    std::string describe() const {
        if (cur().kind == Tok::End) return "end of input";
        if (cur().kind == Tok::Bad) return cur().text;
        return "'" + cur().text + "'";
    }

    void report(Diagnostics& out, const SyntaxError& e) const {
        out.push_back(make_error(codes::Syntax, e.message, SourceSpan{std::string{file_}, e.line, e.column}));
    }

    void expect_kw(std::string_view kw) {
        if (!is_kw(kw)) fail("expected '" + std::string{kw} + "', found " + describe());
        ++pos_;
    }

    void expect_op(std::string_view op) {
        if (!is_op(op)) fail("expected '" + std::string{op} + "', found " + describe());
        ++pos_;
    }

    std::string identifier(const char* what) {
        if (cur().kind != Tok::Ident || kReserved.count(cur().text))
            fail(std::string{"expected "} + what + ", found " + describe());
        return toks_[pos_++].text;
    }

    SourceSpan here() const { return SourceSpan{std::string{file_}, cur().line, cur().column}; }

    ExprPtr node(Expr::Node n, const SourceSpan& at) { return std::make_shared<const Expr>(Expr{std::move(n), at}); }

    OclConstraint constraint() {
        const SourceSpan at = here();
        expect_kw("context");
        OclConstraint c;
        c.context_class = identifier("a class name");
        expect_kw("inv");
        c.name = identifier("an invariant name");
        expect_op(":");
        c.body = expression();
        c.span = at;
        if (cur().kind != Tok::End && !is_kw("context")) fail("unexpected " + describe() + " after invariant body");
        return c;
    }

    ExprPtr expression() { return implies(); }

    ExprPtr implies() {
        const SourceSpan at = here();
        ExprPtr lhs = or_expr();
        if (is_kw("implies")) {
            ++pos_;
            ExprPtr rhs = implies();  // right associative
            return node(Binary{BinaryOp::Implies, std::move(lhs), std::move(rhs)}, at);
        }
        return lhs;
    }

    template <class Next>
    ExprPtr left_assoc(Next next, std::initializer_list<std::pair<std::string_view, BinaryOp>> ops, bool keyword) {
        const SourceSpan at = here();
        ExprPtr lhs = (this->*next)();
        while (true) {
            std::optional<BinaryOp> found;
            for (const auto& [spelling, op] : ops)
                if (keyword ? is_kw(spelling) : is_op(spelling)) found = op;
            if (!found) return lhs;
            ++pos_;
            ExprPtr rhs = (this->*next)();
            lhs = node(Binary{*found, std::move(lhs), std::move(rhs)}, at);
        }
    }

    ExprPtr or_expr() { return left_assoc(&Parser::and_expr, {{"or", BinaryOp::Or}}, true); }
    ExprPtr and_expr() { return left_assoc(&Parser::equality, {{"and", BinaryOp::And}}, true); }
    ExprPtr equality() {
        return left_assoc(&Parser::comparison, {{"=", BinaryOp::Eq}, {"<>", BinaryOp::Ne}}, false);
    }
    ExprPtr comparison() {
        return left_assoc(&Parser::additive,
                          {{"<", BinaryOp::Lt}, {"<=", BinaryOp::Le}, {">", BinaryOp::Gt}, {">=", BinaryOp::Ge}}, false);
    }
    ExprPtr additive() {
        return left_assoc(&Parser::multiplicative, {{"+", BinaryOp::Add}, {"-", BinaryOp::Sub}}, false);
    }
    ExprPtr multiplicative() {
        return left_assoc(&Parser::unary_expr, {{"*", BinaryOp::Mul}, {"/", BinaryOp::Div}}, false);
    }

    ExprPtr unary_expr() {
        const SourceSpan at = here();
        if (is_kw("not")) {
            ++pos_;
            return node(Unary{UnaryOp::Not, unary_expr()}, at);
        }
        if (is_op("-")) {
            const Token& next = peek_tok();
            if (next.kind == Tok::Int || next.kind == Tok::Real) {
                ++pos_;
                return postfix(number(true), at);
            }
            ++pos_;
            return node(Unary{UnaryOp::Negate, unary_expr()}, at);
        }
        return postfix(primary(), at);
    }

    ExprPtr number(bool negative) {
        const SourceSpan at = here();
        const Token& t = cur();
        const std::string text = (negative ? "-" : "") + t.text;
        if (t.kind == Tok::Int) {
            std::int64_t v = 0;
            auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc{} || p != text.data() + text.size()) fail("integer literal " + text + " is out of range");
            ++pos_;
            return node(Literal{Value::integer(v)}, at);
        }
        double v = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || p != text.data() + text.size() || !std::isfinite(v))
            fail("real literal " + text + " is out of range");
        ++pos_;
        return node(Literal{Value::real(v)}, at);
    }

    ExprPtr postfix(ExprPtr e, const SourceSpan& at) {
        while (true) {
            if (is_op(".")) {
                ++pos_;
                e = node(AttrNav{std::move(e), identifier("a property or role name after '.'")}, at);
            } else if (is_op("->")) {
                ++pos_;
                e = collection_op(std::move(e), at);
            } else {
                return e;
            }
        }
    }

    ExprPtr collection_op(ExprPtr source, const SourceSpan& at) {
        static const std::pair<std::string_view, CollectionOpKind> kOps[] = {
            {"size", CollectionOpKind::Size},         {"isEmpty", CollectionOpKind::IsEmpty},
            {"notEmpty", CollectionOpKind::NotEmpty}, {"includes", CollectionOpKind::Includes},
            {"forAll", CollectionOpKind::ForAll},     {"exists", CollectionOpKind::Exists},
            {"select", CollectionOpKind::Select},     {"collect", CollectionOpKind::Collect}};
        if (cur().kind != Tok::Ident) fail("expected a collection operation after '->', found " + describe());
        std::optional<CollectionOpKind> op;
        for (const auto& [name, kind] : kOps)
            if (cur().text == name) op = kind;
        if (!op) fail("unsupported collection operation '" + cur().text + "'");
        ++pos_;
        expect_op("(");
        std::optional<std::string> iterator;
        ExprPtr body;
        if (takes_body(*op)) {
            if (cur().kind == Tok::Ident && !kReserved.count(cur().text) && peek_tok().kind == Tok::Op &&
                peek_tok().text == "|") {
                iterator = cur().text;
                pos_ += 2;
            }
            if (is_op(")")) fail("'" + std::string{op_spelling(*op)} + "' requires a body expression");
            body = expression();
        } else if (*op == CollectionOpKind::Includes) {
            if (is_op(")")) fail("'includes' requires an argument");
            body = expression();
        }
        expect_op(")");
        return node(CollectionOp{std::move(source), *op, std::move(iterator), std::move(body)}, at);
    }

    ExprPtr primary() {
        const SourceSpan at = here();
        const Token& t = cur();
        switch (t.kind) {
            case Tok::Int:
            case Tok::Real: return number(false);
            case Tok::String: ++pos_; return node(Literal{Value::string(t.text)}, at);
            case Tok::Op:
                if (t.text == "(") {
                    ++pos_;
                    ExprPtr inner = expression();
                    expect_op(")");
                    return inner;
                }
                fail("unexpected " + describe());
            case Tok::Ident: break;
            default: fail("unexpected " + describe());
        }
        if (t.text == "true" || t.text == "false") {
            ++pos_;
            return node(Literal{Value::boolean(t.text == "true")}, at);
        }
        if (t.text == "null") {
            ++pos_;
            return node(Literal{Value::null()}, at);
        }
        if (t.text == "self") {
            ++pos_;
            return node(SelfRef{}, at);
        }
        if (t.text == "if") {
            ++pos_;
            ExprPtr c = expression();
            expect_kw("then");
            ExprPtr th = expression();
            expect_kw("else");
            ExprPtr el = expression();
            expect_kw("endif");
            return node(If{std::move(c), std::move(th), std::move(el)}, at);
        }
        std::string name = identifier("an expression");
        if (is_op("::")) {
            ++pos_;
            std::string literal = identifier("an enumeration literal after '::'");
            return node(Literal{Value::enumeration(std::move(name), std::move(literal))}, at);
        }
        return node(VarRef{std::move(name)}, at);
    }

    std::vector<Token> toks_;
    std::string_view file_;
    std::size_t pos_ = 0;
};

}  // namespace

ConstraintParseResult parse_ocl(std::string_view text, std::string_view file) {
    return Parser{Lexer{text, 1, 1}.run(), file}.constraints();
}

ExpressionParseResult parse_ocl_expression(std::string_view text, std::string_view file, int line, int column) {
    return Parser{Lexer{text, line, column}.run(), file}.single_expression();
}

}  // namespace buml::ocl
