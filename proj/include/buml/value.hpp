#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace buml {

struct EnumLiteral {
    std::string enumeration;
    std::string literal;

    bool operator==(const EnumLiteral&) const = default;
};

struct NullValue {
    bool operator==(const NullValue&) const = default;
};

enum class ValueKind { Null, Int, Float, Str, Bool, Enum };

std::string_view value_kind_name(ValueKind k);

/// Scalar slot value: IntV | FloatV | StrV | BoolV | EnumV | Null.
class Value {
public:
    using Storage = std::variant<NullValue, std::int64_t, double, std::string, bool, EnumLiteral>;

    Value() = default;

    static Value null() { return Value{}; }
    static Value integer(std::int64_t v) { return Value{Storage{v}}; }
    static Value real(double v) { return Value{Storage{v}}; }
    static Value string(std::string v) { return Value{Storage{std::move(v)}}; }
    static Value boolean(bool v) { return Value{Storage{v}}; }
    static Value enumeration(std::string enum_name, std::string literal) {
        return Value{Storage{EnumLiteral{std::move(enum_name), std::move(literal)}}};
    }

    ValueKind kind() const { return static_cast<ValueKind>(data_.index()); }
    bool is_null() const { return kind() == ValueKind::Null; }

    std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
    double as_float() const { return std::get<double>(data_); }
    const std::string& as_string() const { return std::get<std::string>(data_); }
    bool as_bool() const { return std::get<bool>(data_); }
    const EnumLiteral& as_enum() const { return std::get<EnumLiteral>(data_); }

    const Storage& storage() const { return data_; }

    bool operator==(const Value&) const = default;

private:
    explicit Value(Storage s) : data_(std::move(s)) {}

    Storage data_;
};

/// Literal as written in object-model and scenario files:
/// `42`, `2.5`, `"text"`, `true`, `Color::Red`, `null`.
std::string to_literal(const Value& v);

/// Shortest text that reads back as the same double and still looks like a real.
std::string format_real(double v);

std::string quote_string(std::string_view s);

}  // namespace buml
