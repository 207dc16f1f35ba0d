#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "minlen/states.hpp"

namespace minlen::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitUsage = 64;

enum class OutputFormat { csv, json };

struct RunConfig {
    double mass = 1.0;
    double omega = 1.0;
    double hbar = 1.0;
    double eta = 0.1;
    double gamma = 0.0;
    int n_max = 8;
    Branch branch = Branch::relativistic;
    OutputFormat format = OutputFormat::csv;
    std::optional<std::string> out_path;
    int quad_order = specfun::kDefaultQuadratureOrder;
    RaisingForm raising_form = RaisingForm::with_rho;

    OscillatorSystem system() const { return OscillatorSystem(mass, omega, DeformedAlgebra(eta, gamma, hbar)); }
};

/// Runs one command line. Output tables go to `out` (or the --out file),
/// diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Round-trip representation used in every table cell.
std::string format_double(double value);

}  // namespace minlen::cli
