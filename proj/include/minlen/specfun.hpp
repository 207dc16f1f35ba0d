#pragma once

#include <functional>
#include <span>
#include <vector>

/// Special functions and quadrature used throughout the library.
namespace minlen::specfun {

/// Gegenbauer polynomial C_n^lambda(x) by upward three-term recurrence.
/// Throws DomainError for n < 0 or lambda <= 0.
double gegenbauer(int n, double lambda, double x);

/// dC_n^lambda/dx from [(n+2lambda-1) C_{n-1} - n x C_n] / (1 - x^2); requires |x| < 1.
double gegenbauer_derivative(int n, double lambda, double x);

/// C_n^lambda(1) = Gamma(n + 2 lambda) / (n! Gamma(2 lambda)).
double gegenbauer_at_one(int n, double lambda);

/// Closed form of the weighted square norm
///   int_{-1}^{1} (1-x^2)^{t-1/2} [C_n^t(x)]^2 dx = pi 2^{1-2t} Gamma(2t+n) / (n! (n+t) Gamma(t)^2).
double gegenbauer_norm_squared(int n, double t);

/// 2F1(-n, b; c; x) as the finite sum over k = 0..n. Throws DomainError when
/// one of the summed terms hits a pole of (c)_k.
double hyp2f1_terminating(int n, double b, double c, double x);

/// log Gamma(x) for x > 0.
double ln_gamma(double x);

/// Gauss-Legendre rule on [-1, 1]. Immutable once built.
class QuadratureRule {
public:
    QuadratureRule(std::vector<double> nodes, std::vector<double> weights);

    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }
    int order() const noexcept { return static_cast<int>(nodes_.size()); }

    /// int_a^b f(x) dx by the affine map of the rule.
    double integrate(double a, double b, const std::function<double(double)>& f) const;

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Nodes by Newton iteration on P_order; exact for polynomials of degree <= 2 order - 1.
QuadratureRule gauss_legendre(int order);

/// Process-wide cache of rules, safe to call concurrently. The reference stays valid.
const QuadratureRule& cached_gauss_legendre(int order);

inline constexpr int kDefaultQuadratureOrder = 200;

/// The weighted square-norm integral above by quadrature after x = sin(theta),
/// theta = (pi/2) sin(pi u/2), which turns the endpoint factor (1-x^2)^{t-1/2}
/// into a zero of order 4t + 1 in u.
double gegenbauer_norm_squared_quadrature(int n, double t, const QuadratureRule& rule);

/// Same substitution for the mixed integral of C_n^t C_m^t.
double gegenbauer_overlap_quadrature(int n, int m, double t, const QuadratureRule& rule);

}  // namespace minlen::specfun
