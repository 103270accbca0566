#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pnfield {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (range, primality, size caps, shapes).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Arithmetic outside the domain of an operation: division by zero, log of zero.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The element γ^i is a ×-divisor of 1: γ^i × γ^witness = 1 with witness ≠ 0.
class StarZeroDivisor : public DomainError {
public:
    StarZeroDivisor(std::uint64_t exponent, std::uint64_t witness, std::uint64_t modulus)
        : DomainError("gamma^" + std::to_string(exponent) + " is not a star unit: " +
                      std::to_string(exponent) + " * " + std::to_string(witness) +
                      " = 0 mod " + std::to_string(modulus)),
          exponent_(exponent), witness_(witness) {}

    std::uint64_t exponent() const noexcept { return exponent_; }
    std::uint64_t witness() const noexcept { return witness_; }

private:
    std::uint64_t exponent_;
    std::uint64_t witness_;
};

/// A function value does not belong to the target group of an analysis.
class ValueOutsideGroup : public Error {
public:
    using Error::Error;
};

/// A construction was requested for parameters outside its hypotheses.
class HypothesisError : public Error {
public:
    using Error::Error;
};

/// Malformed input file or command-line value.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace pnfield
