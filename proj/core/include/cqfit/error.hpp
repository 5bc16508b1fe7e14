#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cqfit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Relation used with inconsistent arities, or two inputs over incompatible schemas.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Text input that does not follow the instance/example/CQ/collection formats.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(format(line, column, message)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(std::size_t line, std::size_t column, const std::string& message) {
        std::string out = "line " + std::to_string(line);
        if (column > 0) {
            out += ", column " + std::to_string(column);
        }
        return out + ": " + message;
    }

    std::size_t line_;
    std::size_t column_;
};

/// An example that does not have the required shape (e.g. not a path example).
class ShapeError : public Error {
public:
    using Error::Error;
};

/// The homomorphism search exceeded its node budget. Never reported as a "no" answer.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

/// A materialization (product, dual) would exceed the configured size guard.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// No CQ in the searched hypothesis space fits the collection.
class NoFittingError : public Error {
public:
    using Error::Error;
};

/// Input collection is outside what a scenario-specific routine accepts.
class ScenarioError : public Error {
public:
    using Error::Error;
};

}  // namespace cqfit
