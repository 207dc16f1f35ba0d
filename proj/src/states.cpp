#include "minlen/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "minlen/errors.hpp"
#include "minlen/spectrum.hpp"

namespace minlen {

namespace {

constexpr double kLn4 = 2.0 * std::numbers::ln2;
constexpr double kInnerProductGate = 1e-9;

double exponent_for(const OscillatorSystem& system, int n, Branch branch) {
    if (branch == Branch::nonrelativistic) return nr_parameters(system).v;
    return v_exponent(system, energy_relativistic(system, n).energy);
}

OscillatorState normalized(const OscillatorSystem& system, Branch branch, int n, double v, int quad_order) {
    OscillatorState raw(system, branch, n, v, 0.0);
    const double norm2 = inner_product_at_order(raw, raw, quad_order);
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw AccuracyError("make_state: quadrature norm is not positive and finite");
    }
    return OscillatorState(system, branch, n, v, -0.5 * std::log(norm2));
}

double raising_prefactor(int n, double lambda) { return std::sqrt((lambda + n + 1.0) / (n + lambda)); }
double lowering_prefactor(int n, double lambda) { return std::sqrt((lambda + n - 1.0) / (n + lambda)); }

}  // namespace

std::string_view to_string(Branch branch) {
    return branch == Branch::relativistic ? "rel" : "nr";
}

OscillatorState::OscillatorState(OscillatorSystem system, Branch branch, int n, double v, double log_norm)
    : system_(system), branch_(branch), n_(n), v_(v), lambda_(0.0), log_norm_(log_norm) {
    if (n < 0) throw DomainError("OscillatorState: n must be nonnegative");
    if (system_.algebra().undeformed()) throw UndeformedBranchError("OscillatorState");
    lambda_ = 2.0 * v - system_.algebra().alpha();
    if (!(lambda_ > 0.0)) {
        throw ModelDegenerateError("OscillatorState: Gegenbauer order lambda = " + std::to_string(lambda_) +
                                   " is not positive");
    }
}

double OscillatorState::norm() const { return std::exp(log_norm_); }

double OscillatorState::operator()(double rho) const {
    if (!(std::abs(rho) < 1.0)) throw DomainError("eval_state: |rho| must be < 1, got " + std::to_string(rho));
    const double one_minus = (1.0 - rho) * (1.0 + rho);
    const double envelope = std::exp(log_norm_ + v_ * (std::log(one_minus) - kLn4));
    return envelope * specfun::gegenbauer(n_, lambda_, rho);
}

double OscillatorState::at_momentum(double p) const { return (*this)(rho_of_p(system_.algebra(), p)); }

OscillatorState make_state(const OscillatorSystem& system, int n, Branch branch, int quad_order) {
    if (system.algebra().undeformed()) throw UndeformedBranchError("make_state");
    return normalized(system, branch, n, exponent_for(system, n, branch), quad_order);
}

OscillatorState ladder_partner(const OscillatorState& state, int n, int quad_order) {
    return normalized(state.system(), state.branch(), n, state.v(), quad_order);
}

double eval_state(const OscillatorState& state, double rho) { return state(rho); }

double inner_product_at_order(const OscillatorState& a, const OscillatorState& b, int order) {
    const auto& sys = a.system();
    if (sys.eta() != b.system().eta() || sys.gamma() != b.system().gamma() || a.branch() != b.branch()) {
        throw DomainError("inner_product: states belong to different systems or branches");
    }
    const auto& rule = specfun::cached_gauss_legendre(order);
    const double alpha = sys.algebra().alpha();
    const double vsum = a.v() + b.v();
    // dp (1+eta p^2)^{alpha-1} = d theta cos^{-2 alpha}(theta) / sqrt(eta), and the
    // two envelopes contribute 4^{-vsum} cos^{2 vsum}(theta).
    const double log_prefactor = a.log_norm() + b.log_norm() - vsum * kLn4 - 0.5 * std::log(sys.eta());
    const double power = 2.0 * (vsum - alpha);
    const double half_pi = std::numbers::pi / 2.0;
    const auto x = rule.nodes();
    const auto w = rule.weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double theta = half_pi * x[i];
        const double rho = std::sin(theta);
        sum += w[i] * std::pow(std::cos(theta), power) * specfun::gegenbauer(a.n(), a.lambda(), rho) *
               specfun::gegenbauer(b.n(), b.lambda(), rho);
    }
    return half_pi * std::exp(log_prefactor) * sum;
}

double inner_product(const OscillatorState& a, const OscillatorState& b, int order) {
    const double base = inner_product_at_order(a, b, order);
    const double doubled = inner_product_at_order(a, b, 2 * order);
    if (std::abs(base - doubled) > kInnerProductGate) {
        throw AccuracyError("inner_product: order " + std::to_string(order) + " and " + std::to_string(2 * order) +
                            " disagree by " + std::to_string(std::abs(base - doubled)));
    }
    return doubled;
}

double reference_norm(const OscillatorState& state) {
    return 1.0 / std::sqrt(specfun::gegenbauer_norm_squared(state.n(), state.lambda()));
}

LadderCoefficients ladder_coeffs(int n, double lambda) {
    if (n < 0) throw DomainError("ladder_coeffs: n must be nonnegative");
    if (!(lambda > 0.0)) throw ModelDegenerateError("ladder_coeffs: lambda must be > 0");
    return {std::sqrt(n * (2.0 * lambda + n - 1.0)), std::sqrt((n + 1.0) * (2.0 * lambda + n)), lambda + n};
}

double apply_ladder(const OscillatorState& state, LadderDirection direction, double rho, RaisingForm form) {
    const int n = state.n();
    const double lambda = state.lambda();
    const double v = state.v();
    if (!(std::abs(rho) < 1.0)) throw DomainError("apply_ladder: |rho| must be < 1, got " + std::to_string(rho));
    if (direction == LadderDirection::lower && n == 0) return 0.0;

    // phi = E(rho) C_n(rho) with E = N ((1-rho^2)/4)^v, so
    // (1 - rho^2) phi' = E [-2 v rho C_n + (1 - rho^2) C_n'].
    const double one_minus = (1.0 - rho) * (1.0 + rho);
    const double envelope = std::exp(state.log_norm() + v * (std::log(one_minus) - kLn4));
    const double c = specfun::gegenbauer(n, lambda, rho);
    const double dc = specfun::gegenbauer_derivative(n, lambda, rho);
    const double phi = envelope * c;
    const double weighted_derivative = envelope * (-2.0 * v * rho * c + one_minus * dc);

    if (direction == LadderDirection::lower) {
        return (weighted_derivative + (2.0 * v + n) * rho * phi) * lowering_prefactor(n, lambda);
    }
    const double shift = 2.0 * lambda - 2.0 * v + n;
    const double multiplier = form == RaisingForm::with_rho ? shift * rho : shift;
    return (-weighted_derivative + multiplier * phi) * raising_prefactor(n, lambda);
}

double Su11Report::max_deviation() const noexcept {
    return std::max({commutator_deviation, raise_weight_deviation, lower_weight_deviation, casimir_deviation,
                     casimir_commutator_deviation, number_operator_deviation});
}

Su11Report su11_check(double lambda, int n_max) {
    if (!(lambda > 0.0)) throw ModelDegenerateError("su11_check: lambda must be > 0");
    if (n_max < 0) throw DomainError("su11_check: n_max must be nonnegative");
    Su11Report report{lambda, n_max, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    const double expected_casimir = lambda * (lambda - 1.0);
    // Eigenvalue of L+ L- on level k, i.e. l+(k-1) l-(k); zero on the ground state.
    auto raise_lower = [lambda](int k) {
        return k == 0 ? 0.0 : ladder_coeffs(k - 1, lambda).l_plus * ladder_coeffs(k, lambda).l_minus;
    };
    auto casimir = [&](int k) {
        const double l0 = ladder_coeffs(k, lambda).l_zero;
        return l0 * (l0 - 1.0) - raise_lower(k);
    };
    for (int n = 0; n <= n_max; ++n) {
        const auto here = ladder_coeffs(n, lambda);
        const auto up = ladder_coeffs(n + 1, lambda);
        // [L-, L+] phi_n = l+(n) l-(n+1) - l-(n) l+(n-1)
        const double commutator = here.l_plus * up.l_minus - raise_lower(n);
        report.commutator_deviation = std::max(report.commutator_deviation, std::abs(commutator - 2.0 * here.l_zero));
        // [L0, L+] phi_n = (l0(n+1) - l0(n)) l+(n) phi_{n+1}
        report.raise_weight_deviation =
            std::max(report.raise_weight_deviation, std::abs((up.l_zero - here.l_zero) * here.l_plus - here.l_plus));
        if (n > 0) {
            const auto down = ladder_coeffs(n - 1, lambda);
            report.lower_weight_deviation = std::max(
                report.lower_weight_deviation, std::abs((down.l_zero - here.l_zero) * here.l_minus + here.l_minus));
            report.casimir_commutator_deviation = std::max(report.casimir_commutator_deviation,
                                                           std::abs(casimir(n - 1) - casimir(n)));
        }
        // [C, L+-] phi_n = l+-(n) (C(n+-1) - C(n)) phi_{n+-1}; the shift itself is compared.
        report.casimir_deviation = std::max(report.casimir_deviation, std::abs(casimir(n) - expected_casimir));
        report.casimir_commutator_deviation =
            std::max(report.casimir_commutator_deviation, std::abs(casimir(n + 1) - casimir(n)));
        report.number_operator_deviation = std::max(report.number_operator_deviation,
                                                    std::abs(raise_lower(n) - n * (2.0 * lambda + n - 1.0)));
    }
    return report;
}

}  // namespace minlen
