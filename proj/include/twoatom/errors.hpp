#pragma once

#include <stdexcept>
#include <string>

namespace twoatom {

// Argument outside the mathematical domain of an operation (negative time,
// non-unit orientation, y <= 0 for Ci, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An iterative or adaptive numerical procedure did not meet its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace twoatom
