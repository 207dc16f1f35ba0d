#include "minlen/gup.hpp"

#include <cmath>
#include <string>

#include "minlen/errors.hpp"

namespace minlen {

namespace {

void require_deformed(const DeformedAlgebra& algebra, const char* what) {
    if (algebra.undeformed()) throw UndeformedBranchError(what);
}

void require_energy(const OscillatorSystem& system, double energy_rel, const char* what) {
    if (!(energy_rel + system.mass() > 0.0)) {
        throw DomainError(std::string(what) + ": need E_R + m > 0, got E_R = " + std::to_string(energy_rel));
    }
}

}  // namespace

DeformedAlgebra::DeformedAlgebra(double eta, double gamma, double hbar) : eta_(eta), gamma_(gamma), hbar_(hbar) {
    if (!std::isfinite(eta) || eta < 0.0) throw DomainError("DeformedAlgebra: eta must be finite and >= 0");
    if (!std::isfinite(gamma)) throw DomainError("DeformedAlgebra: gamma must be finite");
    if (!std::isfinite(hbar) || hbar <= 0.0) throw DomainError("DeformedAlgebra: hbar must be > 0");
}

double DeformedAlgebra::alpha() const {
    require_deformed(*this, "DeformedAlgebra::alpha");
    return gamma_ / eta_;
}

OscillatorSystem::OscillatorSystem(double mass, double omega, DeformedAlgebra algebra)
    : mass_(mass), omega_(omega), algebra_(algebra) {
    if (!std::isfinite(mass) || mass <= 0.0) throw DomainError("OscillatorSystem: mass must be > 0");
    if (!std::isfinite(omega) || omega <= 0.0) throw DomainError("OscillatorSystem: omega must be > 0");
}

double minimal_length(const DeformedAlgebra& algebra) { return algebra.hbar() * std::sqrt(algebra.eta()); }

double uncertainty_bound(const DeformedAlgebra& algebra, double delta_p) {
    if (!(delta_p > 0.0)) throw DomainError("uncertainty_bound: delta_p must be > 0");
    return 0.5 * algebra.hbar() * (1.0 / delta_p + algebra.eta() * delta_p);
}

double scalar_weight(const DeformedAlgebra& algebra, double p) {
    require_deformed(algebra, "scalar_weight");
    return std::pow(1.0 + algebra.eta() * p * p, algebra.alpha() - 1.0);
}

double varsigma_of_p(const DeformedAlgebra& algebra, double p) {
    require_deformed(algebra, "varsigma_of_p");
    const double root = std::sqrt(algebra.eta());
    return std::atan(p * root) / root;
}

double rho_of_varsigma(const DeformedAlgebra& algebra, double varsigma) {
    require_deformed(algebra, "rho_of_varsigma");
    return std::sin(varsigma * std::sqrt(algebra.eta()));
}

double rho_of_p(const DeformedAlgebra& algebra, double p) {
    require_deformed(algebra, "rho_of_p");
    const double x = p * std::sqrt(algebra.eta());
    if (std::isinf(x)) return x > 0 ? 1.0 : -1.0;
    return x / std::hypot(1.0, x);
}

double p_of_rho(const DeformedAlgebra& algebra, double rho) {
    require_deformed(algebra, "p_of_rho");
    if (!(std::abs(rho) < 1.0)) throw DomainError("p_of_rho: |rho| must be < 1, got " + std::to_string(rho));
    return rho / (std::sqrt(algebra.eta()) * std::sqrt((1.0 - rho) * (1.0 + rho)));
}

TildeParams tilde_params(const OscillatorSystem& system, double energy_rel) {
    require_energy(system, energy_rel, "tilde_params");
    const double m = system.mass();
    const double g = system.gamma();
    const double hb = system.hbar();
    const double w = system.omega();
    const double denom = hb * hb * m * w * w * (energy_rel + m);
    return {2.0 / denom - g * (g + system.eta()),
            -(2.0 * (energy_rel - m) * (energy_rel + m) / denom + g)};
}

fm::RawEquation oscillator_equation_in_s(const OscillatorSystem& system, double energy_rel) {
    require_deformed(system.algebra(), "oscillator_equation_in_s");
    const auto [a, b] = tilde_params(system, energy_rel);
    const double eta = system.eta();
    const double shift = system.algebra().alpha() - 0.5;
    const double lead = 4.0 * eta * eta;
    const double mixed = 4.0 * (b * eta - a);
    // -(alpha - 1/2)(1 - 2s)/(s(1-s)) phi'  and  [4s^2 X - 4s X - A~]/(4 eta^2 s^2 (1-s)^2) phi
    return {lead, -lead * shift, -2.0 * lead * shift, 1.0, mixed, -mixed, -a};
}

fm::FmProblem fm_problem_of(const OscillatorSystem& system, double energy_rel) {
    return fm::standard_form(oscillator_equation_in_s(system, energy_rel));
}

double v_exponent(const OscillatorSystem& system, double energy_rel) {
    require_deformed(system.algebra(), "v_exponent");
    require_energy(system, energy_rel, "v_exponent");
    const double eta = system.eta();
    const double hb = system.hbar();
    const double w = system.omega();
    const double m = system.mass();
    return 0.25 + system.gamma() / (2.0 * eta) +
           0.5 * std::sqrt(0.25 + 2.0 / (m * w * w * eta * eta * hb * hb * (energy_rel + m)));
}

NrParameters nr_parameters(const OscillatorSystem& system) {
    require_deformed(system.algebra(), "nr_parameters");
    const double eta = system.eta();
    const double mu_w_eta_hb = system.mass() * system.omega() * eta * system.hbar();
    const double alpha = system.algebra().alpha();
    const double v = 0.25 + 0.5 * alpha + 0.5 * std::sqrt(0.25 + 1.0 / (mu_w_eta_hb * mu_w_eta_hb));
    const double lambda = 2.0 * v - alpha;
    if (!(lambda > 0.0)) throw ModelDegenerateError("nr_parameters: lambda = 2v - gamma/eta <= 0");
    return {v, lambda};
}

double OdeTerms::scale() const noexcept { return std::abs(second) + std::abs(first) + std::abs(potential); }

OdeTerms ode_terms(const OscillatorSystem& system, double energy_rel, const StateFunction& state_eval, double p) {
    const auto [a, b] = tilde_params(system, energy_rel);
    const auto& algebra = system.algebra();
    const double eta = system.eta();
    const double step = 1e-4 * std::max(1.0, std::abs(p));
    const double h = (p + step) - p;
    auto phi = [&](double q) { return state_eval(rho_of_p(algebra, q)); };
    const double fm1 = phi(p - h);
    const double f0 = phi(p);
    const double fp1 = phi(p + h);
    const double d1 = (fp1 - fm1) / (2.0 * h);
    const double d2 = (fp1 - 2.0 * f0 + fm1) / (h * h);
    const double f = 1.0 + eta * p * p;
    return {d2, 2.0 * (system.gamma() + eta) * p / f * d1, -(b + p * p * a) / (f * f) * f0};
}

}  // namespace minlen
