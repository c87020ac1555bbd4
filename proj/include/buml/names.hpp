#pragma once

#include <string>
#include <string_view>

namespace buml {

/// `[A-Za-z_][A-Za-z0-9_]*`
bool is_identifier(std::string_view s);

/// ProductPassport -> product_passport, HTTPServer -> http_server.
std::string snake_case(std::string_view name);

}  // namespace buml
