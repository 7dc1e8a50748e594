#pragma once

#include <stdexcept>
#include <string>

namespace prism {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File system and codec failures.
class IoError : public Error {
public:
    using Error::Error;
};

// Payload exists but cannot be decoded / violates a value contract.
class FormatError : public Error {
public:
    using Error::Error;
};

// Shape mismatch between operands.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Invalid parameter or configuration value.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Sampler step pairs out of order.
class SequencingError : public Error {
public:
    using Error::Error;
};

// Division by a vanishing coefficient, NaN/Inf appearing mid-computation,
// or a metric evaluating to a non-finite value.
class NumericError : public Error {
public:
    using Error::Error;
};

// Not enough samples / degenerate labels / zero-norm vectors.
class DataError : public Error {
public:
    using Error::Error;
};

// Backend advertises no such capability. Raised before any transport
// is attempted, so it can never be confused with a network failure.
class UnsupportedOperationError : public Error {
public:
    using Error::Error;
};

// Remote service failure carrying the HTTP status and a body excerpt.
class BackendError : public Error {
public:
    BackendError(const std::string& msg, int status = 0, std::string body_excerpt = {})
        : Error(msg), status_(status), body_excerpt_(std::move(body_excerpt)) {}

    int status() const { return status_; }
    const std::string& body_excerpt() const { return body_excerpt_; }

private:
    int status_;
    std::string body_excerpt_;
};

class TimeoutError : public BackendError {
public:
    explicit TimeoutError(const std::string& msg) : BackendError(msg) {}
};

}  // namespace prism
