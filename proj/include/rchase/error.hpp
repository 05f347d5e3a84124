#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rchase {

struct SourceSpan {
    std::string file;
    std::size_t line = 0;    // 1-based
    std::size_t column = 0;  // 1-based
    std::string to_string() const;
};

// Base class of all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(SourceSpan span, const std::string& message);
    const SourceSpan& span() const { return span_; }
    const std::string& detail() const { return detail_; }

private:
    SourceSpan span_;
    std::string detail_;
};

// A malformed rule or ruleset built programmatically.
class RuleError : public Error {
public:
    using Error::Error;
};

// A chase run that cannot proceed, e.g. a scripted trigger that is not active.
class ChaseError : public Error {
public:
    ChaseError(std::size_t step, const std::string& message);
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

// An input outside the supported fragment, e.g. a non-sticky ruleset handed to the sticky decider.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

}  // namespace rchase
