#pragma once

#include <stdexcept>
#include <string>

namespace relplan {

/// Syntax or referential error in a text artifact (feature file, scenario
/// spec, bindings file). Carries a 1-based line and, where known, a 1-based
/// column; column 0 means "whole line".
class ParseError : public std::runtime_error {
public:
    ParseError(int line, std::string message)
        : std::runtime_error(format(line, 0, message)),
          line_(line),
          column_(0),
          message_(std::move(message)) {}

    ParseError(int line, int column, std::string message)
        : std::runtime_error(format(line, column, message)),
          line_(line),
          column_(column),
          message_(std::move(message)) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    static std::string format(int line, int column, const std::string& message)
    {
        std::string out = "line " + std::to_string(line);
        if (column > 0)
            out += ", col " + std::to_string(column);
        out += ": " + message;
        return out;
    }

    int line_;
    int column_;
    std::string message_;
};

/// Bad or missing project configuration; the CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace relplan
