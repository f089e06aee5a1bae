#pragma once

#include <stdexcept>
#include <string>

namespace k3kit {

// Precondition violated by a caller-supplied value.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An exact formula produced a value that must be an integer but is not.
class IntegralityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two independent computations of the same quantity disagree.
class CrossCheckError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input document. `where` is a JSON-pointer-like location.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

} // namespace k3kit
