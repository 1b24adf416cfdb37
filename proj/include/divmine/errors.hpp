#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace divmine {

// Malformed input text (bad token, bad id, inconsistent row). line is
// 1-based; 0 means "not tied to a specific line".
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Unreadable/unwritable files and similar environment failures.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured limit refused the request (oracle state caps, LNS bit cap).
class LimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace divmine
