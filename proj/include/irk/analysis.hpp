#pragma once

#include "irk/tableau.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace irk {

/// Residual of one order condition: lhs - rhs.
struct ConditionResidual {
    std::string id;
    int order = 0;
    double value = 0.0;
    bool holds = false;
};

struct OrderReport {
    int classical_order = 0;  ///< capped at kClassicalCap
    int linear_order = 0;     ///< capped at kLinearCap
    int linear_conditions_satisfied = 0;
    std::vector<ConditionResidual> classical;
    std::vector<ConditionResidual> linear;
    std::map<std::string, double> residuals;

    bool classical_at_cap() const;
    bool linear_at_cap() const;
};

inline constexpr int kClassicalCap = 5;
inline constexpr int kLinearCap = 6;
/// Largest k tried for B(k), C(k), D(k).
inline constexpr int kSimplifyingCap = 12;

OrderReport check_order_conditions(const ButcherTableau& T);

struct SimplifyingTriple {
    int p = 0;
    int q = 0;
    int r = 0;
    /// Set when p <= q + r + 1 and p <= 2q + 2.
    std::optional<int> certified_order;
    /// min(p, q + r + 1, 2q + 2).
    int guaranteed_order = 0;
};

bool condition_B(const ButcherTableau& T, int k);
bool condition_C(const ButcherTableau& T, int k);
bool condition_D(const ButcherTableau& T, int k);

SimplifyingTriple simplifying_triple(const ButcherTableau& T);
int stage_order(const ButcherTableau& T);

/// Certified order when the simplifying conditions give one, otherwise
/// the classical order from the condition table.
int method_order(const ButcherTableau& T);

struct DegenerateDenominator : std::domain_error {
    using std::domain_error::domain_error;
};

struct StabilityFunction {
    Mode mode = Mode::exact;
    /// Exact coefficients; in floating mode these are the snapped
    /// rationalisations of the double coefficients.
    RatPoly numerator_exact;
    RatPoly denominator_exact;
    Poly<double> numerator;
    Poly<double> denominator;

    std::complex<double> operator()(std::complex<double> z) const;
};

/// det(I - zA + z e b^T) / det(I - zA), denominator(0) = 1. Common
/// factors are left in place.
StabilityFunction stability_function(const ButcherTableau& T);

struct StabilityEvidence {
    bool poles_in_right_half_plane = false;
    bool imaginary_axis_bounded = false;
    /// Routh table of den(-z), one row per entry, highest degree first.
    std::vector<std::vector<Rational>> routh;
    /// E(u) = |den(iy)|^2 - |num(iy)|^2 with u = y^2.
    RatPoly E;
    std::string reason;
};

struct StabilityVerdict {
    bool a_stable = false;
    StabilityEvidence evidence;
};

StabilityVerdict is_a_stable(const StabilityFunction& R);

/// Square-free factors (factor, multiplicity) by Yun's algorithm.
std::vector<std::pair<RatPoly, int>> square_free_decomposition(const RatPoly& f);
/// Number of distinct real roots in the open interval (lo, inf).
int count_roots_above(const RatPoly& f, const Rational& lo);

}  // namespace irk
