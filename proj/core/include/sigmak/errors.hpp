#pragma once

#include <stdexcept>
#include <string>

namespace sigmak {

/// Precondition violated (index out of range, dimension mismatch, bad constructor argument).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A pointwise evaluation produced a non-finite value.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Symmetric-function data whose characteristic polynomial has non-real roots.
class NonRealSpectrumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Zero pivot in the tridiagonal solve.
class SingularLinearizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every node of the tail window is below the truncation floor.
class DecayEstimateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sigmak
