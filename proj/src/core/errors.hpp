#pragma once

#include <stdexcept>
#include <string>

namespace wqed {

// Every error records the operation that raised it so the CLI can print a
// one-line diagnostic.
class Error : public std::runtime_error {
public:
    Error(std::string op, const std::string& what)
        : std::runtime_error(op + ": " + what), op_(std::move(op)) {}
    const std::string& op() const { return op_; }

private:
    std::string op_;
};

// Invalid user input (bad parameters, bad grids).
class DomainError : public Error {
public:
    using Error::Error;
};

// Numerical failures. The CLI maps all of these to exit status 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class SingularMatrixError : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class NormalizationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class ContinuationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class CollisionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class IncompleteEnumerationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class DegenerateKernelError : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class ToleranceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace wqed
