#pragma once

#include <stdexcept>
#include <string>

namespace dfwm {

/// Base of every error the library throws. The exit code is what the CLI
/// returns when the error escapes a command.
class Error : public std::runtime_error {
public:
    Error(const std::string& what, int exit_code)
        : std::runtime_error(what), exit_code_(exit_code) {}
    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

/// Malformed config document or command line.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error("parse error: " + what, 2) {}
};

/// A value violates an invariant. `key()` names the offending key(s).
class ValidationError : public Error {
public:
    ValidationError(std::string key, const std::string& what)
        : Error("validation error [" + key + "]: " + what, 3), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Singular linear systems, missing steady states, non-finite results.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error("numerical error: " + what, 4) {}
};

class InvariantError : public Error {
public:
    explicit InvariantError(const std::string& what) : Error("invariant failure: " + what, 5) {}
};

}  // namespace dfwm
