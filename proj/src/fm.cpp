#include "minlen/fm.hpp"

#include <cmath>
#include <string>

#include "minlen/errors.hpp"
#include "minlen/specfun.hpp"

namespace minlen::fm {

FmProblem::FmProblem(double k1_, double k2_, double k3_, double A_, double B_, double C_)
    : k1(k1_), k2(k2_), k3(k3_), A(A_), B(B_), C(C_) {
    if (k3 == 0.0) throw DomainError("FmProblem: k3 must be nonzero");
}

FmProblem standard_form(const RawEquation& eq) {
    if (eq.lead == 0.0) throw DomainError("standard_form: leading coefficient is zero");
    return FmProblem(eq.b0 / eq.lead, eq.b1 / eq.lead, eq.k3, eq.c2 / eq.lead, eq.c1 / eq.lead, eq.c0 / eq.lead);
}

Exponents fm_exponents(const FmProblem& p) {
    const double r4 = (1.0 - p.k1) * (1.0 - p.k1) - 4.0 * p.C;
    if (r4 < 0.0) throw NoBoundStateError("fm_exponents: no bound-state exponent k4", r4);
    const double base5 = 0.5 + 0.5 * p.k1 - p.k2 / (2.0 * p.k3);
    const double r5 = base5 * base5 - (p.A / (p.k3 * p.k3) + p.B / p.k3 + p.C);
    if (r5 < 0.0) throw NoBoundStateError("fm_exponents: no bound-state exponent k5", r5);
    return {0.5 * (1.0 - p.k1 + std::sqrt(r4)), base5 + std::sqrt(r5)};
}

double fm_quantization_target(const FmProblem& p, int n) {
    if (n < 0) throw DomainError("fm_quantization_target: n must be nonnegative");
    const double radicand = (p.k3 - p.k2) * (p.k3 - p.k2) - 4.0 * p.A;
    if (radicand < 0.0) {
        throw DomainError("fm_quantization_target: negative radicand " + std::to_string(radicand));
    }
    return 0.5 * (1.0 - 2.0 * n) - (p.k2 - std::sqrt(radicand)) / (2.0 * p.k3);
}

double fm_quantization_residual(const FmProblem& p, int n) {
    const auto [k4, k5] = fm_exponents(p);
    return (k4 + k5) - fm_quantization_target(p, n);
}

double fm_quartic_condition(const FmProblem& p, int n) {
    const auto [k4, k5] = fm_exponents(p);
    const double q = fm_quantization_target(p, n);
    if (q == 0.0) throw DomainError("fm_quartic_condition: quantization target is zero");
    const double inner = (k4 * k4 - k5 * k5 - q * q) / (2.0 * q);
    return inner * inner - k5 * k5;
}

double fm_wavefunction(const FmProblem& p, int n, double s) {
    if (n < 0) throw DomainError("fm_wavefunction: n must be nonnegative");
    if (s < 0.0 || p.k3 * s > 1.0) {
        throw DomainError("fm_wavefunction: s outside [0, 1/k3], got " + std::to_string(s));
    }
    const auto [k4, k5] = fm_exponents(p);
    const double b = n + 2.0 * (k4 + k5) + p.k2 / p.k3 - 1.0;
    const double c = 2.0 * k4 + p.k1;
    return std::pow(s, k4) * std::pow(1.0 - p.k3 * s, k5) * specfun::hyp2f1_terminating(n, b, c, p.k3 * s);
}

FmSolution fm_solve(const FmProblem& problem, int n) {
    const auto [k4, k5] = fm_exponents(problem);
    return {problem, k4, k5, n, (k4 + k5) - fm_quantization_target(problem, n)};
}

}  // namespace minlen::fm
