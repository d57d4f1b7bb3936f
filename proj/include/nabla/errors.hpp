#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nabla {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value does not fit its declared bit length.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Paired sequences have different lengths.
class LengthMismatch : public Error {
public:
    using Error::Error;
};

/// Key fails its invariants; message lists the violations.
class InvalidKey : public Error {
public:
    using Error::Error;
};

/// Request is unsatisfiable (e.g. more distinct values than the range holds).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Keyspace larger than the configured enumeration cap.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Malformed key or ciphertext file.
class FormatError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// An exact-division check failed during decryption: wrong key or
/// corrupted ciphertext. `index` is the 1-based ciphertext position for
/// the deltaQ/deltaR stages and 0 for the final p0 stage.
class IntegrityError : public Error {
public:
    IntegrityError(std::size_t index, std::string component)
        : Error("integrity check failed: " + component +
                (index ? " at index " + std::to_string(index) : std::string())),
          index_(index),
          component_(std::move(component)) {}

    std::size_t index() const noexcept { return index_; }
    const std::string& component() const noexcept { return component_; }

private:
    std::size_t index_;
    std::string component_;
};

}  // namespace nabla
