#ifndef QHM_ERRORS_HPP
#define QHM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qhm {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Operands live on different grids or have different dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A numeric guard fired (overflow, ill-conditioning, eigensolver failure).
class NumericGuardError : public Error {
public:
    using Error::Error;
};

/// Malformed or invalid job configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Failure reading or writing files.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace qhm

#endif // QHM_ERRORS_HPP
