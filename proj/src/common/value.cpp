#include "buml/value.hpp"

#include <charconv>
#include <cmath>

namespace buml {

std::string_view value_kind_name(ValueKind k) {
    switch (k) {
        case ValueKind::Null: return "null";
        case ValueKind::Int: return "int";
        case ValueKind::Float: return "float";
        case ValueKind::Str: return "str";
        case ValueKind::Bool: return "bool";
        case ValueKind::Enum: return "enum";
    }
    return "?";
}

std::string format_real(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, end);
    if (std::isfinite(v) && s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

std::string quote_string(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string to_literal(const Value& v) {
    switch (v.kind()) {
        case ValueKind::Null: return "null";
        case ValueKind::Int: return std::to_string(v.as_int());
        case ValueKind::Float: return format_real(v.as_float());
        case ValueKind::Str: return quote_string(v.as_string());
        case ValueKind::Bool: return v.as_bool() ? "true" : "false";
        case ValueKind::Enum: return v.as_enum().enumeration + "::" + v.as_enum().literal;
    }
    return {};
}

}  // namespace buml
