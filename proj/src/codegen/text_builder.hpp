#pragma once

#include <string>
#include <string_view>

namespace buml::codegen {

// Line-oriented output with fixed-width indentation; always LF.
class TextBuilder {
public:
    explicit TextBuilder(int indent_width = 4) : width_(indent_width) {}

    TextBuilder& line(std::string_view text = {}) {
        if (!text.empty()) out_.append(static_cast<std::size_t>(depth_ * width_), ' ');
        out_.append(text);
        out_ += '\n';
        return *this;
    }

    void indent() { ++depth_; }
    void dedent() { --depth_; }

    const std::string& str() const { return out_; }

private:
    std::string out_;
    int depth_ = 0;
    int width_;
};

}  // namespace buml::codegen
