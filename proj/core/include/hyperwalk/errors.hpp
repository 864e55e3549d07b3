#pragma once

#include <stdexcept>
#include <string>

namespace hyperwalk {

// Raised when a point leaves the open ball or a precondition on the
// geometry is violated mid-computation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Quadrature, root finding or truncation did not converge.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hyperwalk
