#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace envelopes {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed expression text. Carries the byte offset of the offending
/// token and the set of tokens that would have been accepted there.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset, std::vector<std::string> expected = {})
        : Error(what), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Evaluation outside a function's domain (negative sqrt operand, division by zero, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A named constant was referenced but never bound.
class UnboundConstant : public Error {
public:
    explicit UnboundConstant(const std::string& name)
        : Error("unbound constant '" + name + "'"), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Arguments violate an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A mathematically impossible state was reached (e.g. p^2 clearly negative).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace envelopes
