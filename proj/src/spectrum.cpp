#include "minlen/spectrum.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "minlen/errors.hpp"

namespace minlen {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kDamping = 0.5;
constexpr double kFixedPointTolerance = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_level(int n) {
    if (n < 0) throw DomainError("quantum number n must be nonnegative, got " + std::to_string(n));
}

double fixed_point_residual(const OscillatorSystem& system, int n, double energy) {
    return energy - rel_fixed_point_map(system, n, energy);
}

// Sign-definite function whose unique root in (m, inf) is the level.
double bracketing_function(const OscillatorSystem& system, int n, double energy) {
    return system.algebra().undeformed() ? fixed_point_residual(system, n, energy) : rel_residual(system, n, energy);
}

struct FixedPointOutcome {
    double energy;
    double residual;
    int iterations;
    bool converged;
};

FixedPointOutcome iterate_fixed_point(const OscillatorSystem& system, int n) {
    double energy = rel_fixed_point_map(system, n, system.mass());
    double best_energy = energy;
    double best_residual = std::numeric_limits<double>::infinity();
    int stale = 0;
    int iterations = 0;
    while (iterations < kMaxIterations) {
        const double mapped = rel_fixed_point_map(system, n, energy);
        const double r = energy - mapped;
        ++iterations;
        if (std::abs(r) < std::abs(best_residual)) {
            best_residual = r;
            best_energy = energy;
            stale = 0;
        } else if (++stale >= 5) {
            break;
        }
        if (std::abs(r) <= 2.0 * kEps * std::max(1.0, std::abs(energy))) break;
        const double next = (1.0 - kDamping) * mapped + kDamping * energy;
        if (next == energy) break;
        energy = next;
    }
    const bool ok = std::isfinite(best_residual) &&
                    std::abs(best_residual) <= kFixedPointTolerance * std::max(1.0, std::abs(best_energy));
    return {best_energy, best_residual, iterations, ok};
}

}  // namespace

std::string_view to_string(SolveMethod method) {
    switch (method) {
        case SolveMethod::fixed_point: return "fixed_point";
        case SolveMethod::bisection: return "bisection";
        case SolveMethod::closed_form: return "closed_form";
    }
    return "unknown";
}

double rel_residual(const OscillatorSystem& system, int n, double energy) {
    require_level(n);
    if (system.algebra().undeformed()) throw UndeformedBranchError("rel_residual");
    const double m = system.mass();
    if (!(energy + m > 0.0)) throw DomainError("rel_residual: need E_R + m > 0");
    const double eta = system.eta();
    const double hb = system.hbar();
    const double w = system.omega();
    const double scale = hb * hb * eta * m * w * w;
    const double root = std::sqrt(0.25 + 2.0 / (scale * eta * (energy + m)));
    const double half = n + 0.5;
    return 2.0 * (energy - m) / scale - (2.0 * n + 1.0) * root - 0.25 - half * half;
}

double rel_fixed_point_map(const OscillatorSystem& system, int n, double energy) {
    require_level(n);
    const double m = system.mass();
    if (!(energy + m > 0.0)) throw DomainError("rel_fixed_point_map: need E_R + m > 0");
    const double hb = system.hbar();
    const double w = system.omega();
    const double hew = hb * system.eta() * w;
    const double root = std::sqrt(0.25 * hew * hew + 2.0 / (m * (energy + m)));
    return m + 0.5 * hb * w * m * ((2.0 * n + 1.0) * root + hew * (n * n + n + 0.5));
}

Bracket relativistic_bracket(const OscillatorSystem& system, int n) {
    require_level(n);
    const double m = system.mass();
    const double hw = system.hbar() * system.omega();
    const double hewm = system.hbar() * system.eta() * system.omega() * m;
    return {m * (1.0 + 1e-12), m + 10.0 * hw * (2.0 * n + 1.0) * (1.0 + hewm * (n * n + n + 1.0))};
}

SpectrumResult energy_relativistic_fixed_point(const OscillatorSystem& system, int n) {
    require_level(n);
    const auto out = iterate_fixed_point(system, n);
    if (!out.converged) {
        throw SolverError("fixed-point iteration did not converge for n = " + std::to_string(n), out.energy,
                          out.energy);
    }
    return {n, out.energy, out.residual, out.iterations, SolveMethod::fixed_point};
}

SpectrumResult energy_relativistic_bisection(const OscillatorSystem& system, int n) {
    auto [lo, hi] = relativistic_bracket(system, n);
    if (bracketing_function(system, n, lo) >= 0.0) {
        throw SolverError("bisection: residual not negative at the lower bracket end", lo, hi);
    }
    int expansions = 0;
    while (bracketing_function(system, n, hi) < 0.0) {
        if (++expansions > 60) throw SolverError("bisection: could not bracket the root", lo, hi);
        hi = lo + 2.0 * (hi - lo);
    }
    int iterations = 0;
    while (iterations < kMaxIterations) {
        const double mid = 0.5 * (lo + hi);
        ++iterations;
        if (mid <= lo || mid >= hi) break;
        if (bracketing_function(system, n, mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (iterations >= kMaxIterations) {
        throw SolverError("bisection did not converge in 200 iterations", lo, hi);
    }
    // Report whichever end leaves the smaller residual.
    const double r_lo = fixed_point_residual(system, n, lo);
    const double r_hi = fixed_point_residual(system, n, hi);
    const bool take_lo = std::abs(r_lo) <= std::abs(r_hi);
    return {n, take_lo ? lo : hi, take_lo ? r_lo : r_hi, iterations, SolveMethod::bisection};
}

SpectrumResult energy_relativistic(const OscillatorSystem& system, int n) {
    require_level(n);
    const auto out = iterate_fixed_point(system, n);
    if (out.converged) return {n, out.energy, out.residual, out.iterations, SolveMethod::fixed_point};
    auto result = energy_relativistic_bisection(system, n);
    result.iterations += out.iterations;
    return result;
}

SpectrumResult energy_nonrel(const OscillatorSystem& system, int n) {
    require_level(n);
    const double hb = system.hbar();
    const double w = system.omega();
    const double x = hb * system.mass() * system.eta() * w;
    const double energy = hb * w * ((0.5 + n + n * static_cast<double>(n)) * 0.5 * x +
                                    (n + 0.5) * std::sqrt(0.25 * x * x + 1.0));
    return {n, energy, 0.0, 0, SolveMethod::closed_form};
}

double nr_limit_of_relativistic(const OscillatorSystem& system, int n) {
    return energy_relativistic(system, n).energy - system.mass();
}

bool nr_limit_applicable(const OscillatorSystem& system) {
    return system.mass() >= 1e3 * system.hbar() * system.omega();
}

std::vector<RatioRow> ratio_sweep(const SweepTemplate& tmpl, const std::vector<int>& n_values,
                                  const std::vector<double>& xi_grid) {
    std::vector<RatioRow> rows;
    rows.reserve(n_values.size() * xi_grid.size());
    for (double xi : xi_grid) {
        if (!(xi >= 0.0)) throw DomainError("ratio_sweep: xi must be >= 0");
        const double root_eta = xi * kBohrRadius / tmpl.hbar;
        const OscillatorSystem system(tmpl.mass, tmpl.omega,
                                      DeformedAlgebra(root_eta * root_eta, tmpl.gamma, tmpl.hbar));
        const double e0 = energy_nonrel(system, 0).energy;
        for (int n : n_values) {
            const double en = energy_nonrel(system, n).energy;
            rows.push_back({xi, n, en, e0, en / e0});
        }
    }
    return rows;
}

}  // namespace minlen
