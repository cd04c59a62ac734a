#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bibrec {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input that violates an invariant. May carry several messages.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what), messages_{what} {}
    explicit ValidationError(std::vector<std::string> messages)
        : Error(join(messages)), messages_(std::move(messages)) {}

    const std::vector<std::string>& messages() const noexcept { return messages_; }

private:
    static std::string join(const std::vector<std::string>& messages) {
        std::string out;
        for (const auto& m : messages) {
            if (!out.empty()) out += "; ";
            out += m;
        }
        return out;
    }

    std::vector<std::string> messages_;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

class InvalidQueryError : public Error {
public:
    using Error::Error;
};

/// Inputs that were expected to come from the same result set do not.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace bibrec
