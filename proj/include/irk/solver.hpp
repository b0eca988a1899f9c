#pragma once

#include "irk/tableau.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace irk {

using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

struct IVProblem {
    int dimension = 1;
    std::function<VecX(double, const VecX&)> f;
    std::function<MatX(double, const VecX&)> jacobian;  ///< optional
    double a = 0.0;
    double b = 1.0;
    VecX y0;
    std::function<VecX(double)> exact;  ///< optional
};

struct NewtonOptions {
    double tol = 1e-13;  ///< scaled by 1 + |y_n|_inf
    int max_iter = 50;
};

struct StepStats {
    int iterations = 0;
    double residual = 0.0;
};

struct SolveResult {
    std::vector<double> grid;
    std::vector<VecX> values;
    std::vector<StepStats> newton_stats;
};

struct NewtonDivergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularNewtonMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Forward differences with step sqrt(eps) * (1 + |y_k|).
MatX finite_difference_jacobian(const IVProblem& prob, double x, const VecX& y);

/// Index of the first stage that must be iterated; stages before it are
/// explicit and evaluated directly.
int explicit_prefix(const ButcherTableau& T);

/// Full Newton on the stacked stage vector K (length s*d). Stages below
/// explicit_prefix(T) are taken from `guess` unchanged.
VecX newton_solve_stages(const ButcherTableau& T, const IVProblem& prob, double x, const VecX& y, double h,
                         VecX guess, StepStats* stats = nullptr, const NewtonOptions& opts = {});

struct StepResult {
    VecX y_next;
    VecX stages;
    StepStats stats;
};

StepResult irk_step(const ButcherTableau& T, const IVProblem& prob, double x, const VecX& y, double h,
                    const NewtonOptions& opts = {});

SolveResult integrate(const ButcherTableau& T, const IVProblem& prob, int N, const NewtonOptions& opts = {});

}  // namespace irk
