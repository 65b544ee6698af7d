#pragma once

#include <stdexcept>
#include <string>

namespace plectic {

/// Rejected input: a precondition on caller-supplied data does not hold.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Internal consistency failure: an invariant that should be preserved by
/// construction was violated, which signals a wrong scenario or a bug.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Scenario text could not be parsed; carries line/column of the offender.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace plectic
