#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace netmap {

/// Malformed input line. `line` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Carries every problem found, not just the first one.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> problems)
        : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    static std::string join(const std::vector<std::string>& problems) {
        std::string out;
        for (std::size_t i = 0; i < problems.size(); ++i) {
            if (i > 0) out += "; ";
            out += problems[i];
        }
        return out;
    }

    std::vector<std::string> problems_;
};

} // namespace netmap
