#pragma once

#include "irk/solver.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace irk {

struct LengthMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};
struct NonpositiveError : std::domain_error {
    using std::domain_error::domain_error;
};

/// All sums and maxima run over n = 1..N.
struct ErrorReport {
    double e_a = 0.0;
    double e_r = 0.0;
    double e_2 = 0.0;
    double e_r2 = 0.0;
    double e_b = 0.0;
    double e_m = 0.0;
    double e_n = 0.0;
};

ErrorReport compute_errors(const std::vector<double>& exact, const std::vector<double>& approx, double h);
/// Systems: |.| becomes the Euclidean norm, so e_r equals kaps_error.
ErrorReport compute_errors(const std::vector<VecX>& exact, const std::vector<VecX>& approx, double h);

/// log2(e_N / e_2N).
double eoc(double e_N, double e_2N);

/// Errors below this are treated as round-off.
inline constexpr double kErrorFloor = 1e-15;

/// EOC, or nothing when either error sits at the floor.
std::optional<double> eoc_or_floor(double e_N, double e_2N);

/// max_n |Y_n - y_n|_2 / max_n |y_n|_2 over n = 1..N.
double kaps_error(const std::vector<VecX>& exact, const std::vector<VecX>& approx);

/// |Y_n - y_n| / max_{m=0..N} |y_m| for one grid index n.
double point_relative_error(const std::vector<double>& exact, const std::vector<double>& approx, std::size_t n);

}  // namespace irk
