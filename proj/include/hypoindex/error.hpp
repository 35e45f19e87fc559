#pragma once

#include <stdexcept>
#include <string>

namespace hypoindex {

/// Malformed instance text or expression source. Carries a 1-based position,
/// or line 0 when the problem is structural rather than lexical.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ", column " +
                                            std::to_string(column) + ")"
                                      : what),
          line_(line),
          column_(column) {}

    explicit ParseError(const std::string& what) : ParseError(what, 0, 0) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// A numerical precondition failed (zero denominator, ambiguous winding, singular frame...).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace hypoindex
