#pragma once

#include <stdexcept>
#include <string>

namespace qinfo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Dimensions that do not multiply out, mismatched operands, bad subsystem indices.
class DimensionError : public Error {
   public:
    using Error::Error;
};

/// A value outside the mathematical domain of an operation: a non-Hermitian
/// "density matrix", a distribution that does not sum to one, an incomplete POVM.
class DomainError : public Error {
   public:
    using Error::Error;
};

/// A requested object would exceed the configured dimension cap.
class SizeCapError : public Error {
   public:
    using Error::Error;
};

/// Conditioning on an outcome that has probability zero.
class ZeroProbabilityError : public Error {
   public:
    using Error::Error;
};

/// An iterative routine ran out of iterations without converging.
class ConvergenceError : public Error {
   public:
    using Error::Error;
};

}  // namespace qinfo

namespace qinfo {

/// Malformed matrix or state JSON.
class FormatError : public Error {
   public:
    using Error::Error;
};

}  // namespace qinfo
