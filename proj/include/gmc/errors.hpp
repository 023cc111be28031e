#pragma once

#include <stdexcept>
#include <string>

namespace gmc {

// Base of every library error. The CLI maps ConsistencyError (and its
// subclasses) to exit code 3 and ConfigError to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParameterError : public Error { using Error::Error; };
class ResolutionError : public Error { using Error::Error; };
class AliasingError : public Error { using Error::Error; };
class SingularityError : public Error { using Error::Error; };
class OutOfRangeError : public Error { using Error::Error; };
class InvalidKernelError : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };

// Numerical-consistency family.
class ConsistencyError : public Error { using Error::Error; };
class PrecisionError : public ConsistencyError { using ConsistencyError::ConsistencyError; };
class ContourDegenerateError : public ConsistencyError { using ConsistencyError::ConsistencyError; };
class QuadratureError : public ConsistencyError { using ConsistencyError::ConsistencyError; };

class AmbiguousDeficiencyError : public Error { using Error::Error; };
class DegreeTooSmallError : public Error { using Error::Error; };
class CommonZeroError : public Error { using Error::Error; };

}  // namespace gmc
