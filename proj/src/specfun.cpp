#include "minlen/specfun.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "minlen/errors.hpp"

namespace minlen::specfun {

namespace {

void require_gegenbauer_args(int n, double lambda) {
    if (n < 0) throw DomainError("gegenbauer: degree must be nonnegative, got " + std::to_string(n));
    if (!(lambda > 0.0)) throw DomainError("gegenbauer: order lambda must be > 0, got " + std::to_string(lambda));
}

// C_{n-1} and C_n together, used by the derivative relation.
std::pair<double, double> gegenbauer_pair(int n, double lambda, double x) {
    double prev = 0.0;
    double cur = 1.0;
    for (int k = 1; k <= n; ++k) {
        const double next = (2.0 * x * (k + lambda - 1.0) * cur - (k + 2.0 * lambda - 2.0) * prev) / k;
        prev = cur;
        cur = next;
    }
    return {prev, cur};
}

// int (1-x^2)^{t-1/2} C_n C_m dx with x = sin(theta), theta = (pi/2) sin(pi u / 2).
// The first map turns the weight into cos^{2t}(theta); the second flattens the
// endpoints further so the integrand vanishes like (1-u)^{4t+1}.
double sine_mapped_overlap(int n, int m, double t, const QuadratureRule& rule) {
    const double half_pi = std::numbers::pi / 2.0;
    double sum = 0.0;
    const auto u = rule.nodes();
    const auto w = rule.weights();
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double theta = half_pi * std::sin(half_pi * u[i]);
        const double jacobian = half_pi * half_pi * std::cos(half_pi * u[i]);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        sum += w[i] * jacobian * std::pow(c, 2.0 * t) * gegenbauer(n, t, s) * gegenbauer(m, t, s);
    }
    return sum;
}

}  // namespace

double gegenbauer(int n, double lambda, double x) {
    require_gegenbauer_args(n, lambda);
    if (n == 0) return 1.0;
    return gegenbauer_pair(n, lambda, x).second;
}

double gegenbauer_derivative(int n, double lambda, double x) {
    require_gegenbauer_args(n, lambda);
    if (!(std::abs(x) < 1.0)) {
        throw DomainError("gegenbauer_derivative: |x| must be < 1, got " + std::to_string(x));
    }
    if (n == 0) return 0.0;
    const auto [prev, cur] = gegenbauer_pair(n, lambda, x);
    return ((n + 2.0 * lambda - 1.0) * prev - n * x * cur) / (1.0 - x * x);
}

double gegenbauer_at_one(int n, double lambda) {
    require_gegenbauer_args(n, lambda);
    return std::exp(ln_gamma(n + 2.0 * lambda) - ln_gamma(n + 1.0) - ln_gamma(2.0 * lambda));
}

double gegenbauer_norm_squared(int n, double t) {
    require_gegenbauer_args(n, t);
    const double log_value = std::log(std::numbers::pi) + (1.0 - 2.0 * t) * std::numbers::ln2 +
                             ln_gamma(2.0 * t + n) - ln_gamma(n + 1.0) - std::log(n + t) - 2.0 * ln_gamma(t);
    return std::exp(log_value);
}

double hyp2f1_terminating(int n, double b, double c, double x) {
    if (n < 0) throw DomainError("hyp2f1_terminating: n must be nonnegative");
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < n; ++k) {
        if (c + k == 0.0) {
            throw DomainError("hyp2f1_terminating: pole of (c)_k at c = " + std::to_string(c));
        }
        term *= (-n + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        sum += term;
    }
    return sum;
}

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be > 0, got " + std::to_string(x));
    return std::lgamma(x);
}

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
    if (nodes_.size() != weights_.size() || nodes_.empty()) {
        throw DomainError("QuadratureRule: nodes and weights must be nonempty and of equal length");
    }
}

double QuadratureRule::integrate(double a, double b, const std::function<double(double)>& f) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + half * nodes_[i]);
    return half * sum;
}

QuadratureRule gauss_legendre(int order) {
    if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
    const auto n = static_cast<std::size_t>(order);
    std::vector<double> nodes(n);
    std::vector<double> weights(n);
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        double p = 1.0;  // P'_n(0) via P_{n-1}(0): P'_n(0) = n P_{n-1}(0)
        for (std::size_t k = 2; k < n; k += 2) p *= -static_cast<double>(k - 1) / static_cast<double>(k);
        const double dp = static_cast<double>(n) * p;
        nodes[half] = 0.0;
        weights[half] = 2.0 / (dp * dp);
    }
    return QuadratureRule(std::move(nodes), std::move(weights));
}

const QuadratureRule& cached_gauss_legendre(int order) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const QuadratureRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[order];
    if (!slot) slot = std::make_unique<const QuadratureRule>(gauss_legendre(order));
    return *slot;
}

double gegenbauer_norm_squared_quadrature(int n, double t, const QuadratureRule& rule) {
    return sine_mapped_overlap(n, n, t, rule);
}

double gegenbauer_overlap_quadrature(int n, int m, double t, const QuadratureRule& rule) {
    return sine_mapped_overlap(n, m, t, rule);
}

}  // namespace minlen::specfun
