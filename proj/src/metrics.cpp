#include "irk/metrics.hpp"

#include <cmath>

namespace irk {

namespace {

void check_lengths(std::size_t a, std::size_t b) {
    if (a != b) throw LengthMismatch("exact and approximate grids differ in length");
    if (a < 2) throw LengthMismatch("need at least two grid points");
}

}  // namespace

namespace {

template <class V, class Diff, class Mag>
ErrorReport errors_impl(const std::vector<V>& exact, const std::vector<V>& approx, double h, Diff diff, Mag mag) {
    check_lengths(exact.size(), approx.size());
    const std::size_t N = exact.size() - 1;
    ErrorReport r;
    double y_max = 0.0, sum_sq = 0.0, y_sq = 0.0, sum_abs = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
        const double d = diff(exact[n], approx[n]);
        const double y = mag(exact[n]);
        r.e_a = std::max(r.e_a, d);
        y_max = std::max(y_max, y);
        sum_sq += d * d;
        y_sq += y * y;
        sum_abs += d;
    }
    if (y_max == 0.0) throw DivisionByZero("exact solution vanishes on the grid");
    r.e_r = r.e_a / y_max;
    r.e_n = std::sqrt(sum_sq);
    r.e_2 = h * r.e_n;
    r.e_r2 = r.e_2 / (h * std::sqrt(y_sq));
    r.e_b = diff(exact[N], approx[N]);
    r.e_m = sum_abs / static_cast<double>(N);
    return r;
}

}  // namespace

ErrorReport compute_errors(const std::vector<double>& exact, const std::vector<double>& approx, double h) {
    return errors_impl(
        exact, approx, h, [](double a, double b) { return std::abs(a - b); }, [](double a) { return std::abs(a); });
}

ErrorReport compute_errors(const std::vector<VecX>& exact, const std::vector<VecX>& approx, double h) {
    return errors_impl(
        exact, approx, h,
        [](const VecX& a, const VecX& b) {
            if (a.size() != b.size()) throw LengthMismatch("state dimensions differ");
            return (a - b).norm();
        },
        [](const VecX& a) { return a.norm(); });
}

double eoc(double e_N, double e_2N) {
    if (!(e_N > 0.0) || !(e_2N > 0.0)) throw NonpositiveError("eoc needs positive errors");
    return std::log2(e_N / e_2N);
}

std::optional<double> eoc_or_floor(double e_N, double e_2N) {
    if (e_N < kErrorFloor || e_2N < kErrorFloor) return std::nullopt;
    return eoc(e_N, e_2N);
}

double kaps_error(const std::vector<VecX>& exact, const std::vector<VecX>& approx) {
    check_lengths(exact.size(), approx.size());
    double num = 0.0, den = 0.0;
    for (std::size_t n = 1; n < exact.size(); ++n) {
        if (exact[n].size() != approx[n].size()) throw LengthMismatch("state dimensions differ");
        num = std::max(num, (exact[n] - approx[n]).norm());
        den = std::max(den, exact[n].norm());
    }
    if (den == 0.0) throw DivisionByZero("exact solution vanishes on the grid");
    return num / den;
}

double point_relative_error(const std::vector<double>& exact, const std::vector<double>& approx, std::size_t n) {
    check_lengths(exact.size(), approx.size());
    if (n >= exact.size()) throw std::out_of_range("grid index out of range");
    double y_max = 0.0;
    for (double v : exact) y_max = std::max(y_max, std::abs(v));
    if (y_max == 0.0) throw DivisionByZero("exact solution vanishes on the grid");
    return std::abs(exact[n] - approx[n]) / y_max;
}

}  // namespace irk
