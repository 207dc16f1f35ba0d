#include <doctest.h>

#include <cmath>
#include <random>

#include "minlen/errors.hpp"
#include "minlen/gup.hpp"
#include "minlen/specfun.hpp"
#include "minlen/spectrum.hpp"
#include "minlen/states.hpp"

using namespace minlen;
using doctest::Approx;

namespace {

// 50-digit values from tests/oracles/mp_oracle.py
constexpr double kATilde = 0.76173076923076923077;  // eta=0.1, gamma=0.05, E=1.6
constexpr double kBTilde = -1.25;
constexpr double kC = -19.230769230769230769;       // eta=0.1, gamma=0, E=1.6
constexpr double kVTilde = 5.2562460986251964319;   // eta=0.1, E+m=2
constexpr double kNrV = 0.8090169943749474241;      // eta=1
constexpr double kNrLambda = 1.6180339887498948482;

OscillatorSystem unit_system(double eta, double gamma = 0.0) { return {1.0, 1.0, DeformedAlgebra(eta, gamma)}; }

}  // namespace

TEST_CASE("algebra validation") {
    CHECK_THROWS_AS(DeformedAlgebra(-0.1), DomainError);
    CHECK_THROWS_AS(DeformedAlgebra(0.1, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(DeformedAlgebra(0.1, NAN), DomainError);
    CHECK_THROWS_AS(OscillatorSystem(0.0, 1.0, DeformedAlgebra(0.1)), DomainError);
    CHECK_THROWS_AS(OscillatorSystem(1.0, -1.0, DeformedAlgebra(0.1)), DomainError);
    CHECK(DeformedAlgebra(0.0).undeformed());
    CHECK_THROWS_AS(DeformedAlgebra(0.0).alpha(), UndeformedBranchError);
    CHECK(DeformedAlgebra(0.2, 0.1).alpha() == 0.5);
}

TEST_CASE("minimal length and uncertainty bound") {
    CHECK(minimal_length(DeformedAlgebra(0.0)) == 0.0);
    CHECK(minimal_length(DeformedAlgebra(1.0)) == 1.0);
    CHECK(minimal_length(DeformedAlgebra(0.04)) == Approx(0.2).epsilon(1e-15));

    CHECK(uncertainty_bound(DeformedAlgebra(1.0), 1.0) == Approx(1.0).epsilon(1e-15));
    CHECK(uncertainty_bound(DeformedAlgebra(0.25), 4.0) == Approx(0.625).epsilon(1e-15));
    CHECK_THROWS_AS(uncertainty_bound(DeformedAlgebra(1.0), 0.0), DomainError);

    // the bound is minimized at delta_p = 1/sqrt(eta), where it equals the minimal length
    for (double eta : {0.01, 0.3, 4.0}) {
        const DeformedAlgebra a(eta, 0.0, 1.7);
        const double dp = 1 / std::sqrt(eta);
        CHECK(uncertainty_bound(a, dp) == Approx(minimal_length(a)).epsilon(1e-14));
        CHECK(uncertainty_bound(a, 1.01 * dp) > uncertainty_bound(a, dp));
        CHECK(uncertainty_bound(a, 0.99 * dp) > uncertainty_bound(a, dp));
    }
}

TEST_CASE("scalar product weight") {
    CHECK(scalar_weight(DeformedAlgebra(0.1), 0.0) == 1.0);
    CHECK(scalar_weight(DeformedAlgebra(0.3, 0.3), 7.5) == 1.0);
    CHECK(scalar_weight(DeformedAlgebra(1.0), 1.0) == Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(scalar_weight(DeformedAlgebra(0.0), 1.0), UndeformedBranchError);
}

TEST_CASE("momentum to rho") {
    const DeformedAlgebra one(1.0);
    CHECK(rho_of_p(one, 0.0) == 0.0);
    CHECK(rho_of_p(one, 1.0) == Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(rho_of_p(one, 22.5) > 0.999);
    CHECK(rho_of_p(one, -22.5) < -0.999);
    CHECK(rho_of_p(one, 1e200) <= 1.0);
    CHECK_THROWS_AS(rho_of_p(DeformedAlgebra(0.0), 1.0), UndeformedBranchError);

    CHECK(p_of_rho(one, 0.0) == 0.0);
    CHECK(p_of_rho(one, 1 / std::sqrt(2.0)) == Approx(1.0).epsilon(1e-15));
    CHECK(p_of_rho(DeformedAlgebra(4.0), 0.6) == Approx(0.375).epsilon(1e-15));
    CHECK_THROWS_AS(p_of_rho(one, 1.0), DomainError);
    CHECK_THROWS_AS(p_of_rho(one, -1.0), DomainError);
}

TEST_CASE("transform chain round trips") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-0.999, 0.999);
    for (double eta : {0.01, 0.1, 1.0, 25.0}) {
        const DeformedAlgebra a(eta);
        double prev = -2;
        for (int i = 0; i < 200; ++i) {
            const double rho = u(rng);
            CHECK(std::abs(rho_of_p(a, p_of_rho(a, rho)) - rho) <= 1e-13);
            CHECK(std::abs(rho_of_s(s_of_rho(rho)) - rho) <= 1e-15);
            const double s = s_of_rho(rho);
            CHECK((s > 0.0 && s < 1.0));
            const double p = 10 * u(rng) / std::sqrt(eta);
            CHECK(std::abs(p_of_rho(a, rho_of_p(a, p)) - p) <= 1e-13 * std::max(1.0, std::abs(p)));
            // rho = sin(varsigma sqrt(eta)), varsigma = arctan(p sqrt(eta)) / sqrt(eta)
            CHECK(std::abs(rho_of_varsigma(a, varsigma_of_p(a, p)) - rho_of_p(a, p)) <= 1e-15);
        }
        for (double p = -50; p <= 50; p += 0.37) {
            const double r = rho_of_p(a, p);
            CHECK(r > prev);
            prev = r;
        }
    }
}

TEST_CASE("tilde parameters") {
    const auto sys = unit_system(0.1);
    CHECK(tilde_params(sys, 1.0).a_tilde == Approx(1.0).epsilon(1e-15));  // E + m = 2
    CHECK(tilde_params(sys, sys.mass()).b_tilde == 0.0);

    const auto t = tilde_params(unit_system(0.1, 0.05), 1.6);
    CHECK(t.a_tilde == Approx(kATilde).epsilon(1e-15));
    CHECK(t.b_tilde == Approx(kBTilde).epsilon(1e-15));
    CHECK_THROWS_AS(tilde_params(sys, -1.0), DomainError);
    CHECK_THROWS_AS(tilde_params(sys, -3.0), DomainError);
}

TEST_CASE("fm problem of the oscillator") {
    const auto sys = unit_system(0.1);
    const auto pr = fm_problem_of(sys, 1.6);
    CHECK(pr.k1 == Approx(0.5).epsilon(1e-15));
    CHECK(pr.k2 == Approx(1.0).epsilon(1e-15));
    CHECK(pr.k3 == 1.0);
    CHECK(pr.C == Approx(kC).epsilon(1e-14));
    CHECK_THROWS_AS(fm_problem_of(unit_system(0.0), 1.6), UndeformedBranchError);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double eta = 0.01 + 2 * u(rng);
        const auto p = fm_problem_of(unit_system(eta, (u(rng) - 0.5) * eta), 1 + 3 * u(rng));
        CHECK(p.A == Approx(-p.B).epsilon(1e-14));
        CHECK(p.k2 == Approx(2 * p.k1).epsilon(1e-14));
    }
}

TEST_CASE("closed-form exponent") {
    CHECK(v_exponent(unit_system(0.1), 1.0) == Approx(kVTilde).epsilon(1e-15));
    // formal eta -> infinity limit at gamma = 0
    CHECK(v_exponent(unit_system(1e8), 1.0) == Approx(0.5).epsilon(1e-12));
    for (double g : {0.01, 0.05, 0.3}) {
        const double shift = v_exponent(unit_system(0.1, g), 1.4) - v_exponent(unit_system(0.1), 1.4);
        CHECK(shift == Approx(g / 0.2).epsilon(1e-13));
    }
    // agreement with the fm route on the documented grid
    for (double eta : {0.01, 0.1, 1.0}) {
        for (double g : {0.0, 0.5 * eta, eta}) {
            for (double e : {1.1, 2.0}) {
                const auto sys = unit_system(eta, g);
                const auto ex = fm_exponents(fm_problem_of(sys, e));
                const double v = v_exponent(sys, e);
                CHECK(std::abs(ex.k4 - v) <= 1e-11 * v);
                CHECK(std::abs(ex.k5 - v) <= 1e-11 * v);
            }
        }
    }
}

TEST_CASE("nonrelativistic parameters") {
    const auto p = nr_parameters(unit_system(1.0));
    CHECK(p.v == Approx(kNrV).epsilon(1e-15));
    CHECK(p.lambda == Approx(kNrLambda).epsilon(1e-15));
    for (double eta : {0.05, 0.5, 5.0}) {
        const auto base = nr_parameters(unit_system(eta));
        CHECK(base.lambda == Approx(0.5 + std::sqrt(0.25 + 1 / (eta * eta))).epsilon(1e-15));
        for (double g : {-0.3 * eta, 0.7 * eta, 3 * eta}) {
            CHECK(nr_parameters(unit_system(eta, g)).lambda == Approx(base.lambda).epsilon(1e-14));
        }
    }
}

TEST_CASE("ode residual: constant trial function") {
    const auto sys = unit_system(0.1);
    const double E = 1.6;
    const auto t = tilde_params(sys, E);
    REQUIRE(t.b_tilde != 0.0);
    const StateFunction one = [](double) { return 1.0; };
    for (double p : {0.0, 0.3, -2.0, 7.0}) {
        const double q = 1 + 0.1 * p * p;
        const double want = -(t.b_tilde + p * p * t.a_tilde) / (q * q);
        CHECK(ode_residual(sys, E, one, p) == Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("ode residual is linear in the state") {
    const StateFunction f = [](double r) { return std::exp(-r * r) * (1 + r); };
    const StateFunction g = [&](double r) { return 2 * f(r); };
    const auto sys = unit_system(0.3, 0.1);
    for (double p : {-1.5, 0.2, 0.9}) {
        CHECK(ode_residual(sys, 1.5, g, p) == Approx(2 * ode_residual(sys, 1.5, f, p)).epsilon(1e-12));
    }
}

TEST_CASE("ode residual at a converged ground state") {
    const auto sys = unit_system(0.1);
    const auto E = energy_relativistic(sys, 0).energy;
    const auto st = make_state(sys, 0, Branch::relativistic);
    const StateFunction phi = [&](double r) { return st(r); };
    const auto terms = ode_terms(sys, E, phi, 0.3);
    CHECK(std::abs(terms.residual()) < 1e-5 * terms.scale());
    CHECK(terms.scale() > 0);

    // a slightly wrong energy is detected
    const auto off = ode_terms(sys, E * 1.001, phi, 0.3);
    CHECK(std::abs(off.residual()) > 1e-5 * off.scale());
}

TEST_CASE("weighted p-integral equals the rho-integral over sqrt(eta)") {
    // p = t/(1 - t^2) maps (-1, 1) onto the real line; this leaves the rho chain entirely
    const auto rule = specfun::gauss_legendre(400);
    for (double eta : {0.5, 1.0}) {
        for (double gamma : {0.0, eta}) {
            const auto sys = unit_system(eta, gamma);
            const auto np = nr_parameters(sys);
            for (int n : {0, 3}) {
                auto phi_p = [&](double p) {
                    const double r = rho_of_p(sys.algebra(), p);
                    return std::pow((1 - r * r) / 4, np.v) * specfun::gegenbauer(n, np.lambda, r);
                };
                const double p_integral = rule.integrate(-1, 1, [&](double t) {
                    const double d = 1 - t * t;
                    const double p = t / d;
                    const double f = phi_p(p);
                    return scalar_weight(sys.algebra(), p) * f * f * (1 + t * t) / (d * d);
                });
                const double rho_part =
                    std::pow(4.0, -2 * np.v) * specfun::gegenbauer_norm_squared(n, np.lambda) / std::sqrt(eta);
                CHECK(p_integral == Approx(rho_part).epsilon(1e-8));
            }
        }
    }
}
