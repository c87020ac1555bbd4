#pragma once

#include <string_view>
#include <vector>

#include "buml/ocl/ast.hpp"

namespace buml::ocl {

struct ConstraintParseResult {
    std::vector<OclConstraint> constraints;
    Diagnostics diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

struct ExpressionParseResult {
    ExprPtr expr;  // null on error
    Diagnostics diagnostics;
};

/// `.ocl` file: `context <Class> inv <name>: <expr>` blocks, `--` comments.
/// Recovers at the next `context` keyword after a syntax error.
ConstraintParseResult parse_ocl(std::string_view text, std::string_view file = {});

/// A single expression (state-machine guards). `line` and `column` locate
/// the first character for diagnostics.
ExpressionParseResult parse_ocl_expression(std::string_view text, std::string_view file = {}, int line = 1,
                                           int column = 1);

}  // namespace buml::ocl
