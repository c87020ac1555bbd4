#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "buml/diagnostic.hpp"
#include "buml/value.hpp"

namespace buml::ocl {

struct Expr;
/// Trees are immutable once built, so subtrees are shared freely.
using ExprPtr = std::shared_ptr<const Expr>;

enum class UnaryOp { Not, Negate };
enum class BinaryOp { Mul, Div, Add, Sub, Lt, Le, Gt, Ge, Eq, Ne, And, Or, Implies };
enum class CollectionOpKind { Size, IsEmpty, NotEmpty, Includes, ForAll, Exists, Select, Collect };

struct Literal {
    Value value;
};
struct SelfRef {};
struct VarRef {
    std::string name;
};
/// `.name`: attribute when the class has one, otherwise association end.
struct AttrNav {
    ExprPtr source;
    std::string property;
};
/// Association end only, by role name or target class name.
struct AssocNav {
    ExprPtr source;
    std::string end;
};
struct Unary {
    UnaryOp op;
    ExprPtr operand;
};
struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};
struct If {
    ExprPtr condition;
    ExprPtr then_branch;
    ExprPtr else_branch;
};
/// `source->op(...)`. `body` is the iterator body for forAll/exists/select/collect,
/// the argument for includes, and empty for size/isEmpty/notEmpty.
struct CollectionOp {
    ExprPtr source;
    CollectionOpKind op;
    std::optional<std::string> iterator;
    ExprPtr body;
};

struct Expr {
    using Node = std::variant<Literal, SelfRef, VarRef, AttrNav, AssocNav, Unary, Binary, If, CollectionOp>;

    Node node;
    std::optional<SourceSpan> span;
};

struct OclConstraint {
    std::string context_class;
    std::string name;
    ExprPtr body;
    std::optional<SourceSpan> span;
};

std::string_view op_spelling(BinaryOp op);
std::string_view op_spelling(UnaryOp op);
std::string_view op_spelling(CollectionOpKind op);

bool takes_body(CollectionOpKind op);  // forAll, exists, select, collect

/// Structural equality, ignoring spans.
bool same_tree(const Expr& a, const Expr& b);

/// Fully parenthesized concrete syntax that parses back to the same tree.
std::string to_ocl(const Expr& e);

// Construction helpers.
ExprPtr lit(Value v);
ExprPtr self();
ExprPtr var(std::string name);
ExprPtr attr(ExprPtr source, std::string property);
ExprPtr assoc(ExprPtr source, std::string end);
ExprPtr unary(UnaryOp op, ExprPtr operand);
ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr if_then_else(ExprPtr c, ExprPtr t, ExprPtr e);
ExprPtr coll(ExprPtr source, CollectionOpKind op, std::optional<std::string> iterator = std::nullopt,
             ExprPtr body = nullptr);

}  // namespace buml::ocl
