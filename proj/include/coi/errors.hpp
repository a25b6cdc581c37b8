// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coi {

/// Root of every error raised by the toolchain.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a contract (bad argument, schema, duplicate id, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed record in a line-oriented file. `line()` is 1-based, 0 if unknown.
class ParseError : public ValidationError {
public:
    explicit ParseError(const std::string& message, std::size_t line = 0)
        : ValidationError(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Missing or inconsistent configuration, including provider authentication failures.
class ConfigError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Provider unreachable, timed out, or failed after all retries.
class TransportError : public Error {
public:
    using Error::Error;
};

/// Provider kept rate-limiting until the retry budget ran out.
class ThrottledError : public TransportError {
public:
    using TransportError::TransportError;
};

}  // namespace coi
