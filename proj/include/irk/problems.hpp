#pragma once

#include "irk/solver.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace irk {

struct UnknownId : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BadOverride : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NamedProblem {
    std::string id;
    IVProblem problem;
    std::map<std::string, double> params;
};

const std::vector<std::string>& problem_ids();

/// Overrides: "lambda" (exp4a), "mu" (exp5), "delta" (exp3).
NamedProblem make_problem(std::string_view id, const std::map<std::string, double>& overrides = {});

/// The w > 0 with w + ln w = c, i.e. W(e^c), without forming e^c.
double lambert_w_log(double c);

/// 1 / (W(A e^(A - x)) + 1) with A = 1/delta - 1.
double exp3_exact(double x, double delta);

enum class PRVariant { a, b };

/// y' = lambda (y - phi) + phi'. Variant a: phi = sin(pi/4 + x),
/// y0 = phi(0); variant b: phi = 10 - (10 + x) e^-x, y0 = 10.
NamedProblem prothero_robinson(double lambda, PRVariant variant);

}  // namespace irk
