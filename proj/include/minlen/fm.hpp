#pragma once

/// Generic bound-state solver for equations in the standard form
///
///   Psi'' + (k1 - k2 s) / (s (1 - k3 s)) Psi' + (A s^2 + B s + C) / (s^2 (1 - k3 s)^2) Psi = 0.
///
/// The energy lives inside (A, B, C) in a problem-specific way, so this header
/// exposes exponents, the quantization residual and the wavefunction; root
/// finding belongs to the caller.
namespace minlen::fm {

struct FmProblem {
    double k1;
    double k2;
    double k3;
    double A;
    double B;
    double C;

    /// Throws DomainError when k3 == 0.
    FmProblem(double k1, double k2, double k3, double A, double B, double C);
};

/// An equation with an arbitrary nonzero coefficient on Psi'':
///   lead Psi'' + (b0 - b1 s)/(s (1 - k3 s)) Psi' + (c2 s^2 + c1 s + c0)/(s^2 (1 - k3 s)^2) Psi = 0.
struct RawEquation {
    double lead;
    double b0;
    double b1;
    double k3;
    double c2;
    double c1;
    double c0;
};

/// Divides through by the leading coefficient.
FmProblem standard_form(const RawEquation& eq);

struct Exponents {
    double k4;
    double k5;
};

/// k4 = [1 - k1 + sqrt((1-k1)^2 - 4C)]/2 and the matching k5, both on the "+" branch.
/// Throws NoBoundStateError on a negative radicand.
Exponents fm_exponents(const FmProblem& problem);

/// (1-2n)/2 - (k2 - sqrt((k3-k2)^2 - 4A)) / (2 k3): the value k4 + k5 must take at level n.
double fm_quantization_target(const FmProblem& problem, int n);

/// (k4 + k5) - fm_quantization_target; zero iff level n is an eigenvalue.
double fm_quantization_residual(const FmProblem& problem, int n);

/// The closed quartic-style form of the same condition,
///   [(k4^2 - k5^2 - Q^2) / (2Q)]^2 - k5^2 with Q = fm_quantization_target.
/// Only a cross-check; it accepts the same energies as the residual above.
double fm_quartic_condition(const FmProblem& problem, int n);

/// Unnormalized s^{k4} (1 - k3 s)^{k5} 2F1(-n, n + 2(k4+k5) + k2/k3 - 1; 2 k4 + k1; k3 s).
double fm_wavefunction(const FmProblem& problem, int n, double s);

struct FmSolution {
    FmProblem problem;
    double k4;
    double k5;
    int n;
    double residual;
};

/// Bundles exponents and residual for level n; throws as fm_exponents.
FmSolution fm_solve(const FmProblem& problem, int n);

}  // namespace minlen::fm
