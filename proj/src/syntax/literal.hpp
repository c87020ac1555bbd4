#pragma once

#include <optional>
#include <string>
#include <vector>

#include "buml/value.hpp"
#include "line_lexer.hpp"

namespace buml::syntax {

struct LiteralResult {
    std::optional<Value> value;
    bool bare_identifier = false;  // value is a placeholder; caller resolves the name
    std::string bare_identifier_text;
    std::string error;
    int column = 1;
};

/// Reads one value literal starting at toks[i]; advances i past it.
LiteralResult parse_literal(const std::vector<Token>& toks, std::size_t& i);

}  // namespace buml::syntax
