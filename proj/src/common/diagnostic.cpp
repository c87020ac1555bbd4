#include "buml/diagnostic.hpp"

#include <algorithm>

namespace buml {

std::string_view severity_name(Severity s) {
    return s == Severity::Error ? "error" : "warning";
}

Diagnostic make_error(std::string code, std::string message, std::optional<SourceSpan> location,
                      std::string subject) {
    return Diagnostic{Severity::Error, std::move(code), std::move(message), std::move(location),
                      std::move(subject)};
}

Diagnostic make_warning(std::string code, std::string message, std::optional<SourceSpan> location,
                        std::string subject) {
    return Diagnostic{Severity::Warning, std::move(code), std::move(message), std::move(location),
                      std::move(subject)};
}

bool has_errors(std::span<const Diagnostic> diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::size_t count_errors(std::span<const Diagnostic> diags) {
    return static_cast<std::size_t>(std::count_if(
        diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; }));
}

std::string format_diagnostic(const Diagnostic& d, std::string_view fallback_file) {
    std::string out{severity_name(d.severity)};
    out += ' ';
    out += d.code;
    out += ' ';
    if (d.location) {
        out += d.location->file.empty() ? std::string{fallback_file} : d.location->file;
        out += ':' + std::to_string(d.location->line) + ':' + std::to_string(d.location->column);
    } else {
        out += fallback_file;
        out += ":0:0";
    }
    out += ' ';
    out += d.message;
    return out;
}

}  // namespace buml
