#pragma once

#include <string>
#include <vector>

#include "minlen/gup.hpp"
#include "minlen/specfun.hpp"
#include "minlen/states.hpp"

namespace minlen {

struct VerifyOptions {
    OscillatorSystem system;
    int n_max = 8;
    int quad_order = specfun::kDefaultQuadratureOrder;
    RaisingForm raising_form = RaisingForm::with_rho;
};

enum class CheckStatus { pass, fail, skipped };

std::string_view to_string(CheckStatus status);

struct CheckResult {
    std::string name;
    CheckStatus status;
    double deviation;  ///< worst observed deviation in the check's own metric
    double threshold;
    std::string note;
};

/// The invariant suite behind the `verify` command. With eta == 0 the checks
/// that need the deformed transforms are reported as skipped and the
/// undeformed-limit checks run instead.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

// Individual checks, reusable from tests.

/// Sup over rho in [-0.95, 0.95] of |L phi_n - l phi_{n+-1}| / sup |phi_{n+-1}|, worst over n <= n_max.
double ladder_identity_deviation(const OscillatorSystem& system, int n_max, RaisingForm form, int quad_order);

/// Worst |residual| / local scale of the relativistic oscillator equation over
/// 101 points in [-5/sqrt(eta), 5/sqrt(eta)], for n <= n_max.
double ode_residual_deviation(const OscillatorSystem& system, int n_max);

}  // namespace minlen
