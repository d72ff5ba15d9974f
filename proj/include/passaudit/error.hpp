#pragma once

#include <stdexcept>
#include <string>

namespace passaudit {

// Every recoverable failure in the library surfaces as an Error with a
// human-readable message; parse-type errors carry their position.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what), position_(position) {}

    // Line number for file formats, character offset for spec strings.
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace passaudit
