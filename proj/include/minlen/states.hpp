#pragma once

#include <string_view>

#include "minlen/gup.hpp"
#include "minlen/specfun.hpp"

namespace minlen {

enum class Branch { relativistic, nonrelativistic };

std::string_view to_string(Branch branch);

/// phi_n(rho) = N ((1 - rho^2)/4)^v C_n^lambda(rho) with lambda = 2v - gamma/eta,
/// rho = p sqrt(eta)/sqrt(1 + eta p^2).
///
/// N is fixed by quadrature of the weighted momentum-space scalar product,
/// so <n|n> = 1 by construction. It is stored as a logarithm because 4^{-v}
/// and N separately overflow for small eta.
class OscillatorState {
public:
    OscillatorState(OscillatorSystem system, Branch branch, int n, double v, double log_norm);

    const OscillatorSystem& system() const noexcept { return system_; }
    Branch branch() const noexcept { return branch_; }
    int n() const noexcept { return n_; }
    double v() const noexcept { return v_; }
    double lambda() const noexcept { return lambda_; }
    double log_norm() const noexcept { return log_norm_; }
    double norm() const;

    /// Throws DomainError for |rho| >= 1.
    double operator()(double rho) const;
    double at_momentum(double p) const;

private:
    OscillatorSystem system_;
    Branch branch_;
    int n_;
    double v_;
    double lambda_;
    double log_norm_;
};

/// Relativistic states take v from the exponent at the converged E_R(n);
/// nonrelativistic ones from the closed-form v. Throws ModelDegenerateError
/// for lambda <= 0 and SolverError when the energy solve fails.
OscillatorState make_state(const OscillatorSystem& system, int n, Branch branch,
                           int quad_order = specfun::kDefaultQuadratureOrder);

/// Level n built on the exponents (v, lambda) of `state`, normalized afresh.
/// Ladder operators act within such a family.
OscillatorState ladder_partner(const OscillatorState& state, int n, int quad_order = specfun::kDefaultQuadratureOrder);

double eval_state(const OscillatorState& state, double rho);

/// The weighted scalar product int dp (1 + eta p^2)^{gamma/eta - 1} a(p) b(p)
/// at a fixed Gauss-Legendre order. The p-integral is carried to rho = sin(theta)
/// with the exact Jacobian dp = d rho / (sqrt(eta) (1 - rho^2)^{3/2}), and the
/// rule is applied in theta.
double inner_product_at_order(const OscillatorState& a, const OscillatorState& b, int order);

/// As above with the doubled order as a convergence gate; throws AccuracyError
/// if the two disagree by more than 1e-9.
double inner_product(const OscillatorState& a, const OscillatorState& b,
                     int order = specfun::kDefaultQuadratureOrder);

/// sqrt(n! (n+lambda) Gamma(lambda)^2 / (2^{1-2lambda} pi Gamma(2lambda+n))), the textbook
/// constant that omits the 4^{-2v} prefactor and the sqrt(eta) Jacobian. Kept for comparison only.
double reference_norm(const OscillatorState& state);

struct LadderCoefficients {
    double l_minus;
    double l_plus;
    double l_zero;
};

/// l- = sqrt(n(2 lambda + n - 1)), l+ = sqrt((n+1)(2 lambda + n)), l0 = lambda + n.
LadderCoefficients ladder_coeffs(int n, double lambda);

enum class LadderDirection { raise, lower };

/// How the non-derivative term of the raising operator is written.
enum class RaisingForm {
    /// (2 lambda - 2v + n) rho: follows from the Gegenbauer recursion.
    with_rho,
    /// (2 lambda - 2v + n) without rho, as in one printed form. Fails the ladder identity.
    literal,
};

/// Applies
///   L- = [(1 - rho^2) d/drho + (2v + n) rho] sqrt((lambda+n-1)/(n+lambda))
///   L+ = [-(1 - rho^2) d/drho + (2 lambda - 2v + n) rho] sqrt((lambda+n+1)/(n+lambda))
/// to the state at rho, with the derivative taken analytically.
double apply_ladder(const OscillatorState& state, LadderDirection direction, double rho,
                    RaisingForm form = RaisingForm::with_rho);

/// Coefficient-level check of [L-, L+] = 2 L0, [L0, L+-] = +-L+-, the Casimir
/// C = L0(L0 - 1) - L+ L- = lambda(lambda - 1), [C, L+-] = 0 and L+ L- = n(2 lambda + n - 1),
/// over n = 0..n_max. L0 doubles as the operator some texts call L_z.
struct Su11Report {
    double lambda;
    int n_max;
    double commutator_deviation;
    double raise_weight_deviation;
    double lower_weight_deviation;
    double casimir_deviation;
    double casimir_commutator_deviation;
    double number_operator_deviation;

    double max_deviation() const noexcept;
};

Su11Report su11_check(double lambda, int n_max);

}  // namespace minlen
