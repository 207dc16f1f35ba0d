#pragma once

#include <functional>

#include "minlen/fm.hpp"

namespace minlen {

/// [x, p] = i hbar (1 + eta p^2) with position operator
/// x = i hbar [(1 + eta p^2) d/dp + gamma p] in momentum space.
///
/// eta == 0 is the undeformed branch: every formula that divides by eta
/// (transforms, weight exponent alpha, the FM mapping) refuses it and the
/// spectrum code falls back to closed-form limits.
class DeformedAlgebra {
public:
    /// Throws DomainError for eta < 0, hbar <= 0 or non-finite input.
    explicit DeformedAlgebra(double eta, double gamma = 0.0, double hbar = 1.0);

    double eta() const noexcept { return eta_; }
    double gamma() const noexcept { return gamma_; }
    double hbar() const noexcept { return hbar_; }
    bool undeformed() const noexcept { return eta_ == 0.0; }

    /// gamma / eta, the exponent in the scalar-product weight.
    double alpha() const;

    DeformedAlgebra with_eta(double eta) const { return DeformedAlgebra(eta, gamma_, hbar_); }
    DeformedAlgebra with_gamma(double gamma) const { return DeformedAlgebra(eta_, gamma, hbar_); }

private:
    double eta_;
    double gamma_;
    double hbar_;
};

/// Harmonic oscillator V = m omega^2 x^2 / 2 on a deformed algebra. `mass` is the
/// rest mass m on the relativistic branch and the reduced mass mu on the
/// nonrelativistic one.
class OscillatorSystem {
public:
    OscillatorSystem(double mass, double omega, DeformedAlgebra algebra);

    double mass() const noexcept { return mass_; }
    double omega() const noexcept { return omega_; }
    const DeformedAlgebra& algebra() const noexcept { return algebra_; }
    double eta() const noexcept { return algebra_.eta(); }
    double gamma() const noexcept { return algebra_.gamma(); }
    double hbar() const noexcept { return algebra_.hbar(); }

    OscillatorSystem with_algebra(const DeformedAlgebra& a) const { return OscillatorSystem(mass_, omega_, a); }
    OscillatorSystem with_omega(double omega) const { return OscillatorSystem(mass_, omega, algebra_); }
    OscillatorSystem with_mass(double mass) const { return OscillatorSystem(mass, omega_, algebra_); }

private:
    double mass_;
    double omega_;
    DeformedAlgebra algebra_;
};

/// (Delta x)_min = hbar sqrt(eta).
double minimal_length(const DeformedAlgebra& algebra);

/// (hbar/2)(1/dp + eta dp); its minimum over dp is minimal_length.
double uncertainty_bound(const DeformedAlgebra& algebra, double delta_p);

/// (1 + eta p^2)^{alpha - 1}, the measure of the momentum-space scalar product.
double scalar_weight(const DeformedAlgebra& algebra, double p);

// Coordinate chain p -> varsigma -> rho -> s.
double varsigma_of_p(const DeformedAlgebra& algebra, double p);
double rho_of_varsigma(const DeformedAlgebra& algebra, double varsigma);
/// p sqrt(eta) / sqrt(1 + eta p^2), in (-1, 1).
double rho_of_p(const DeformedAlgebra& algebra, double p);
/// Inverse of rho_of_p; throws for |rho| >= 1.
double p_of_rho(const DeformedAlgebra& algebra, double rho);
inline double s_of_rho(double rho) { return 0.5 * (1.0 - rho); }
inline double rho_of_s(double s) { return 1.0 - 2.0 * s; }

struct TildeParams {
    double a_tilde;
    double b_tilde;
};

/// A~ = 2/(hbar^2 m omega^2 (E+m)) - gamma(gamma+eta),
/// B~ = -(2 (E^2 - m^2)/(hbar^2 m omega^2 (E+m)) + gamma).
TildeParams tilde_params(const OscillatorSystem& system, double energy_rel);

/// The momentum-space equation in s = (1 - rho)/2, multiplied through by 4 eta^2.
fm::RawEquation oscillator_equation_in_s(const OscillatorSystem& system, double energy_rel);

/// standard_form(oscillator_equation_in_s(...)):
/// k1 = -(alpha - 1/2), k2 = 2 k1, k3 = 1, A = (B~ eta - A~)/eta^2 = -B, C = -A~/(4 eta^2).
fm::FmProblem fm_problem_of(const OscillatorSystem& system, double energy_rel);

/// Closed form of k4 = k5:
/// 1/4 + gamma/(2 eta) + (1/2) sqrt(1/4 + 2/(m omega^2 eta^2 hbar^2 (E+m))).
double v_exponent(const OscillatorSystem& system, double energy_rel);

struct NrParameters {
    double v;
    double lambda;
};

/// Nonrelativistic exponent v and Gegenbauer order lambda = 2v - gamma/eta.
NrParameters nr_parameters(const OscillatorSystem& system);

/// Individual terms of the momentum-space oscillator equation at p:
///   phi'' + 2(gamma+eta) p/(1+eta p^2) phi' - (B~ + p^2 A~)/(1+eta p^2)^2 phi.
struct OdeTerms {
    double second;     ///< phi''
    double first;      ///< 2(gamma+eta) p/(1+eta p^2) phi'
    double potential;  ///< -(B~ + p^2 A~)/(1+eta p^2)^2 phi

    double residual() const noexcept { return second + first + potential; }
    /// Sum of term magnitudes; the natural scale for the residual at this p.
    double scale() const noexcept;
};

using StateFunction = std::function<double(double rho)>;

/// Derivatives by central differences with step 1e-4 max(1, |p|); phi is
/// sampled through rho_of_p.
OdeTerms ode_terms(const OscillatorSystem& system, double energy_rel, const StateFunction& state_eval, double p);

inline double ode_residual(const OscillatorSystem& system, double energy_rel, const StateFunction& state_eval,
                           double p) {
    return ode_terms(system, energy_rel, state_eval, p).residual();
}

}  // namespace minlen
