#pragma once

#include <stdexcept>
#include <string>

namespace rpc {

// Base of every error raised by the toolkit. `stage` names the module and
// operation that rejected the input, e.g. "vector_fields/exp_flow".
class Error : public std::runtime_error {
public:
    Error(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

// Malformed input text.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error("rp_cli/parse", what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// A precondition of a mathematical operation is violated.
class DomainError : public Error {
public:
    using Error::Error;
};

// The truncation order is too small to certify the requested answer.
class UncertifiedError : public Error {
public:
    using Error::Error;
};

} // namespace rpc
