#pragma once

#include <stdexcept>
#include <string>

namespace tatespace {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class FieldMismatch : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold for the input.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A materialized prefix contradicts the declared tail descriptor.
class DescriptorViolation : public Error {
public:
    using Error::Error;
};

/// An explicit finite presentation was asked for a level it does not have.
class PrefixExhausted : public Error {
public:
    using Error::Error;
};

/// A postcondition re-check failed; indicates invalid input that slipped
/// past validation or an implementation bug.
class CertificateError : public Error {
public:
    using Error::Error;
};

}  // namespace tatespace
