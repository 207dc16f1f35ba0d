#pragma once

#include <string_view>
#include <vector>

#include "minlen/gup.hpp"

namespace minlen {

enum class SolveMethod { fixed_point, bisection, closed_form };

std::string_view to_string(SolveMethod method);

struct SpectrumResult {
    int n;
    /// E_R including the rest mass on the relativistic branch, E_n otherwise.
    double energy;
    /// E - F(E) for the relativistic fixed-point map F (finite at eta = 0 too);
    /// zero for the closed form.
    double residual;
    int iterations;
    SolveMethod method;
};

/// LHS - RHS of the implicit relativistic quantization condition
///   2(E-m)/(hbar^2 eta m w^2) - (2n+1) sqrt(1/4 + 2/(hbar^2 eta^2 m w^2 (E+m))) - 1/4 - (n+1/2)^2.
/// Requires eta > 0. Strictly increasing in E for E > m; contains no gamma.
double rel_residual(const OscillatorSystem& system, int n, double energy);

/// F(E) = m + (hbar w m / 2)[(2n+1) sqrt(hbar^2 eta^2 w^2/4 + 2/(m(E+m))) + hbar eta w (n^2+n+1/2)].
/// Valid for eta >= 0; the relativistic levels are its fixed points.
double rel_fixed_point_map(const OscillatorSystem& system, int n, double energy);

/// Damped fixed-point iteration (damping 0.5) with bisection fallback.
/// Throws SolverError if both fail within 200 iterations.
SpectrumResult energy_relativistic(const OscillatorSystem& system, int n);

/// The two solver routes separately, for cross-validation. Each throws
/// SolverError instead of falling back.
SpectrumResult energy_relativistic_fixed_point(const OscillatorSystem& system, int n);
SpectrumResult energy_relativistic_bisection(const OscillatorSystem& system, int n);

/// Initial bisection bracket [m(1 + 1e-12), m + 10 hbar w (2n+1)(1 + hbar eta w m (n^2+n+1))].
struct Bracket {
    double lo;
    double hi;
};
Bracket relativistic_bracket(const OscillatorSystem& system, int n);

/// E_n = hbar w [(1/2 + n + n^2) hbar mu eta w / 2 + (n + 1/2) sqrt(hbar^2 eta^2 mu^2 w^2/4 + 1)].
SpectrumResult energy_nonrel(const OscillatorSystem& system, int n);

/// E_R - m from the relativistic solver; tends to energy_nonrel as m grows.
double nr_limit_of_relativistic(const OscillatorSystem& system, int n);

/// True when m >= 1e3 hbar w, where the NR reading of E_R - m is meaningful.
bool nr_limit_applicable(const OscillatorSystem& system);

struct SweepTemplate {
    double mass;
    double omega;
    double hbar = 1.0;
    double gamma = 0.0;
};

/// Bohr radius in natural units used to turn xi into eta = (xi a0 / hbar)^2.
inline constexpr double kBohrRadius = 1.0;

struct RatioRow {
    double xi;
    int n;
    double e_n;
    double e_0;
    double ratio;
};

/// Rows ordered by xi, then by n in the order given. Uses the NR spectrum.
std::vector<RatioRow> ratio_sweep(const SweepTemplate& tmpl, const std::vector<int>& n_values,
                                  const std::vector<double>& xi_grid);

}  // namespace minlen
