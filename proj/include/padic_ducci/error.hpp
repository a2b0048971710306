#pragma once

#include <stdexcept>
#include <string>

namespace padic_ducci {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A rational string that is not of the form "a" or "a/b" with b != 0.
class ParseError : public Error {
public:
    using Error::Error;
};

class InvalidPrime : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Failure reading or writing a file.
class IoError : public Error {
public:
    using Error::Error;
};

/// Input validation failure tied to a named field of an input document.
class InputError : public Error {
public:
    InputError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace padic_ducci
