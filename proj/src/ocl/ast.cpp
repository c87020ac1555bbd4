#include "buml/ocl/ast.hpp"

namespace buml::ocl {

std::string_view op_spelling(BinaryOp op) {
    switch (op) {
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::Eq: return "=";
        case BinaryOp::Ne: return "<>";
        case BinaryOp::And: return "and";
        case BinaryOp::Or: return "or";
        case BinaryOp::Implies: return "implies";
    }
    return "?";
}

std::string_view op_spelling(UnaryOp op) { return op == UnaryOp::Not ? "not" : "-"; }

std::string_view op_spelling(CollectionOpKind op) {
    switch (op) {
        case CollectionOpKind::Size: return "size";
        case CollectionOpKind::IsEmpty: return "isEmpty";
        case CollectionOpKind::NotEmpty: return "notEmpty";
        case CollectionOpKind::Includes: return "includes";
        case CollectionOpKind::ForAll: return "forAll";
        case CollectionOpKind::Exists: return "exists";
        case CollectionOpKind::Select: return "select";
        case CollectionOpKind::Collect: return "collect";
    }
    return "?";
}

bool takes_body(CollectionOpKind op) {
    return op == CollectionOpKind::ForAll || op == CollectionOpKind::Exists || op == CollectionOpKind::Select ||
           op == CollectionOpKind::Collect;
}

namespace {

bool same_ptr(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return same_tree(*a, *b);
}

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

std::string quote_ocl(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        if (c == '\t') {
            out += "\\t";
            continue;
        }
        out += c;
    }
    return out + "'";
}

}  // namespace

bool same_tree(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        overloaded{
            [&](const Literal& x) { return x.value == std::get<Literal>(b.node).value; },
            [&](const SelfRef&) { return true; },
            [&](const VarRef& x) { return x.name == std::get<VarRef>(b.node).name; },
            [&](const AttrNav& x) {
                const auto& y = std::get<AttrNav>(b.node);
                return x.property == y.property && same_ptr(x.source, y.source);
            },
            [&](const AssocNav& x) {
                const auto& y = std::get<AssocNav>(b.node);
                return x.end == y.end && same_ptr(x.source, y.source);
            },
            [&](const Unary& x) {
                const auto& y = std::get<Unary>(b.node);
                return x.op == y.op && same_ptr(x.operand, y.operand);
            },
            [&](const Binary& x) {
                const auto& y = std::get<Binary>(b.node);
                return x.op == y.op && same_ptr(x.lhs, y.lhs) && same_ptr(x.rhs, y.rhs);
            },
            [&](const If& x) {
                const auto& y = std::get<If>(b.node);
                return same_ptr(x.condition, y.condition) && same_ptr(x.then_branch, y.then_branch) &&
                       same_ptr(x.else_branch, y.else_branch);
            },
            [&](const CollectionOp& x) {
                const auto& y = std::get<CollectionOp>(b.node);
                return x.op == y.op && x.iterator == y.iterator && same_ptr(x.source, y.source) &&
                       same_ptr(x.body, y.body);
            },
        },
        a.node);
}

std::string to_ocl(const Expr& e) {
    return std::visit(
        overloaded{
            [](const Literal& x) -> std::string {
                if (x.value.kind() == ValueKind::Str) return quote_ocl(x.value.as_string());
                std::string s = to_literal(x.value);
                // negative numbers print parenthesized so `a - -1` stays unambiguous
                return (!s.empty() && s[0] == '-') ? "(" + s + ")" : s;
            },
            [](const SelfRef&) -> std::string { return "self"; },
            [](const VarRef& x) -> std::string { return x.name; },
            [](const AttrNav& x) { return to_ocl(*x.source) + "." + x.property; },
            // AssocNav has no distinct surface form; `.` resolves attribute first.
            [](const AssocNav& x) { return to_ocl(*x.source) + "." + x.end; },
            [](const Unary& x) {
                // `-` directly before a number reads as a negative literal, so wrap the operand
                if (x.op == UnaryOp::Negate) return "(-(" + to_ocl(*x.operand) + "))";
                return "(not " + to_ocl(*x.operand) + ")";
            },
            [](const Binary& x) {
                return "(" + to_ocl(*x.lhs) + " " + std::string{op_spelling(x.op)} + " " + to_ocl(*x.rhs) + ")";
            },
            [](const If& x) {
                return "(if " + to_ocl(*x.condition) + " then " + to_ocl(*x.then_branch) + " else " +
                       to_ocl(*x.else_branch) + " endif)";
            },
            [](const CollectionOp& x) {
                std::string s = to_ocl(*x.source) + "->" + std::string{op_spelling(x.op)} + "(";
                if (x.iterator) s += *x.iterator + " | ";
                if (x.body) s += to_ocl(*x.body);
                return s + ")";
            },
        },
        e.node);
}

namespace {
ExprPtr make(Expr::Node n) { return std::make_shared<const Expr>(Expr{std::move(n), std::nullopt}); }
}  // namespace

ExprPtr lit(Value v) { return make(Literal{std::move(v)}); }
ExprPtr self() { return make(SelfRef{}); }
ExprPtr var(std::string name) { return make(VarRef{std::move(name)}); }
ExprPtr attr(ExprPtr source, std::string property) { return make(AttrNav{std::move(source), std::move(property)}); }
ExprPtr assoc(ExprPtr source, std::string end) { return make(AssocNav{std::move(source), std::move(end)}); }
ExprPtr unary(UnaryOp op, ExprPtr operand) { return make(Unary{op, std::move(operand)}); }
ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) { return make(Binary{op, std::move(lhs), std::move(rhs)}); }
ExprPtr if_then_else(ExprPtr c, ExprPtr t, ExprPtr e) { return make(If{std::move(c), std::move(t), std::move(e)}); }
ExprPtr coll(ExprPtr source, CollectionOpKind op, std::optional<std::string> iterator, ExprPtr body) {
    return make(CollectionOp{std::move(source), op, std::move(iterator), std::move(body)});
}

}  // namespace buml::ocl
