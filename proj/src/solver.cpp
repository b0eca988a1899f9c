#include "irk/solver.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace irk {

MatX finite_difference_jacobian(const IVProblem& prob, double x, const VecX& y) {
    const auto d = y.size();
    MatX J(d, d);
    const VecX f0 = prob.f(x, y);
    const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
    for (Eigen::Index k = 0; k < d; ++k) {
        VecX yp = y;
        const double step = root_eps * (1.0 + std::abs(y(k)));
        yp(k) += step;
        J.col(k) = (prob.f(x, yp) - f0) / step;
    }
    return J;
}

int explicit_prefix(const ButcherTableau& T) {
    int m = 0;
    while (m < T.s) {
        bool zero_tail = true;
        for (int j = m; j < T.s; ++j)
            if (T.A(m, j) != 0.0) zero_tail = false;
        if (!zero_tail) break;
        ++m;
    }
    return m;
}

namespace {

MatX jacobian_at(const IVProblem& prob, double x, const VecX& y) {
    return prob.jacobian ? prob.jacobian(x, y) : finite_difference_jacobian(prob, x, y);
}

VecX stage_value(const ButcherTableau& T, const VecX& y, double h, const VecX& K, int i, Eigen::Index d) {
    VecX Y = y;
    for (int j = 0; j < T.s; ++j)
        if (T.A(i, j) != 0.0) Y += h * T.A(i, j) * K.segment(j * d, d);
    return Y;
}

bool finite(const VecX& v) { return v.allFinite(); }

}  // namespace

VecX newton_solve_stages(const ButcherTableau& T, const IVProblem& prob, double x, const VecX& y, double h, VecX K,
                         StepStats* stats, const NewtonOptions& opts) {
    const Eigen::Index d = y.size();
    const int s = T.s;
    const int m = explicit_prefix(T);
    const int n_imp = s - m;
    StepStats local;
    if (n_imp == 0) {
        if (stats) *stats = local;
        return K;
    }
    const double tol = opts.tol * (1.0 + y.lpNorm<Eigen::Infinity>());
    const Eigen::Index dim = n_imp * d;

    for (int it = 0; it <= opts.max_iter; ++it) {
        VecX F(dim);
        std::vector<VecX> Y(static_cast<std::size_t>(s));
        for (int i = m; i < s; ++i) {
            Y[static_cast<std::size_t>(i)] = stage_value(T, y, h, K, i, d);
            F.segment((i - m) * d, d) = K.segment(i * d, d) - prob.f(x + T.c(i) * h, Y[static_cast<std::size_t>(i)]);
        }
        if (!finite(F)) throw NewtonDivergence("non-finite stage residual");
        local.residual = F.lpNorm<Eigen::Infinity>();
        local.iterations = it;
        const bool converged = local.residual <= tol;
        if (!converged && it == opts.max_iter) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "Newton residual %.3e above %.3e after %d iterations", local.residual, tol,
                          opts.max_iter);
            throw NewtonDivergence(buf);
        }

        MatX M = MatX::Identity(dim, dim);
        for (int i = m; i < s; ++i) {
            const MatX J = jacobian_at(prob, x + T.c(i) * h, Y[static_cast<std::size_t>(i)]);
            for (int j = m; j < s; ++j)
                if (T.A(i, j) != 0.0) M.block((i - m) * d, (j - m) * d, d, d) -= h * T.A(i, j) * J;
        }
        Eigen::FullPivLU<MatX> lu(M);
        if (!lu.isInvertible()) throw SingularNewtonMatrix("singular Newton matrix");
        const VecX delta = lu.solve(-F);
        if (!finite(delta)) throw NewtonDivergence("non-finite Newton update");
        // The correction is applied even after convergence: the residual test
        // is absolute, and small-magnitude f would otherwise keep a relative
        // stage error far above round-off.
        K.segment(m * d, dim) += delta;
        if (converged) break;
        // Stiff problems amplify rounding in f, so a negligible stage-value
        // update also counts as convergence.
        if (h * delta.lpNorm<Eigen::Infinity>() <= tol) {
            local.iterations = it + 1;
            break;
        }
    }
    if (stats) *stats = local;
    return K;
}

StepResult irk_step(const ButcherTableau& T, const IVProblem& prob, double x, const VecX& y, double h,
                    const NewtonOptions& opts) {
    if (!(h > 0.0)) throw std::invalid_argument("irk_step: h must be positive");
    const Eigen::Index d = y.size();
    const int s = T.s;
    const int m = explicit_prefix(T);
    VecX K(s * d);
    for (int i = 0; i < m; ++i) K.segment(i * d, d) = prob.f(x + T.c(i) * h, stage_value(T, y, h, K, i, d));
    const VecX f0 = prob.f(x, y);
    for (int i = m; i < s; ++i) K.segment(i * d, d) = f0;

    StepResult out;
    out.stages = newton_solve_stages(T, prob, x, y, h, std::move(K), &out.stats, opts);
    out.y_next = y;
    for (int i = 0; i < s; ++i) out.y_next += h * T.b(i) * out.stages.segment(i * d, d);
    if (!finite(out.y_next)) throw NewtonDivergence("non-finite step result");
    return out;
}

SolveResult integrate(const ButcherTableau& T, const IVProblem& prob, int N, const NewtonOptions& opts) {
    if (N < 1) throw std::invalid_argument("integrate: N must be at least 1");
    const double h = (prob.b - prob.a) / N;
    SolveResult r;
    r.grid.reserve(static_cast<std::size_t>(N) + 1);
    r.values.reserve(static_cast<std::size_t>(N) + 1);
    r.grid.push_back(prob.a);
    r.values.push_back(prob.y0);
    for (int n = 0; n < N; ++n) {
        const double x = prob.a + n * h;
        try {
            auto step = irk_step(T, prob, x, r.values.back(), h, opts);
            r.values.push_back(std::move(step.y_next));
            r.newton_stats.push_back(step.stats);
        } catch (const NewtonDivergence& e) {
            throw NewtonDivergence("step " + std::to_string(n) + ": " + e.what());
        } catch (const SingularNewtonMatrix& e) {
            throw SingularNewtonMatrix("step " + std::to_string(n) + ": " + e.what());
        }
        r.grid.push_back(prob.a + (n + 1) * h);
    }
    return r;
}

}  // namespace irk
