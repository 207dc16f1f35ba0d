#pragma once

#include <stdexcept>
#include <string>

namespace minlen {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A deformed-only formula was called with eta == 0.
class UndeformedBranchError : public DomainError {
public:
    explicit UndeformedBranchError(const std::string& what)
        : DomainError(what + ": eta = 0 is the undeformed branch") {}
};

/// Negative radicand in the bound-state exponents k4/k5.
class NoBoundStateError : public DomainError {
public:
    NoBoundStateError(const std::string& what, double radicand)
        : DomainError(what + " (radicand " + std::to_string(radicand) + ")"), radicand_(radicand) {}
    double radicand() const noexcept { return radicand_; }

private:
    double radicand_;
};

/// Gegenbauer order lambda <= 0; the state family degenerates.
class ModelDegenerateError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Root finder failed to converge; message carries the last bracket.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double lo, double hi)
        : std::runtime_error(what + " [bracket " + std::to_string(lo) + ", " + std::to_string(hi) + "]"),
          lo_(lo), hi_(hi) {}
    double lower() const noexcept { return lo_; }
    double upper() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

/// Quadrature failed its order-doubling convergence gate.
class AccuracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace minlen
