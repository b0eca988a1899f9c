#include "properties.hpp"

#include "irk/analysis.hpp"
#include "irk/derivation.hpp"
#include "irk/problems.hpp"
#include "irk/solver.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <set>
#include <sstream>

namespace irk::props {

namespace {

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

Rational monomial_repeated_integral(int i, int k) {
    return Rational(factorial(i)) / Rational(factorial(i + k));
}

/// Largest d such that t^0..t^d are integrated exactly at depth k (-1 if none).
template <class T>
int measured_degree(const RepeatedQuadrature<T>& q, int k, const T& tol, int limit) {
    int d = -1;
    for (int i = 0; i <= limit; ++i) {
        T approx(0);
        for (Eigen::Index j = 0; j < q.unit.cols(); ++j) {
            T t = q.node_set.nodes[static_cast<std::size_t>(j)];
            T p(1);
            for (int e = 0; e < i; ++e) p *= t;
            approx += q.unit(k - 1, j) * p;
        }
        T ref;
        if constexpr (is_exact_v<T>)
            ref = monomial_repeated_integral(i, k);
        else
            ref = T(monomial_repeated_integral(i, k));
        if (abs(approx - ref) > tol) break;
        d = i;
    }
    return d;
}

/// Degree of the plain quadrature rule on the same nodes.
int plain_degree(NodeKind kind, int n) {
    switch (kind) {
        case NodeKind::closed_nc:
        case NodeKind::open_nc: return n % 2 == 1 ? n : n - 1;
        case NodeKind::gauss_legendre: return 2 * n - 1;
        case NodeKind::radau_left:
        case NodeKind::radau_right: return 2 * n - 2;
        case NodeKind::lobatto: return 2 * n - 3;
    }
    return -1;
}

}  // namespace

PropertyResult quadrature_exactness() {
    PropertyResult r{"quadrature exactness degree", true, ""};
    int cases = 0;
    std::ostringstream bad;
    auto record = [&](const std::string& what, int k, int got, int want) {
        ++cases;
        if (got != want) {
            r.passed = false;
            bad << what << " k=" << k << " degree " << got << " expected " << want << "; ";
        }
    };
    // The oracle itself against the library's repeated integration.
    for (int i = 0; i <= 6; ++i)
        for (int k = 1; k <= 6; ++k) {
            const RatPoly p = RatPoly::monomial(Rational(1), i);
            if (repeated_integral_poly(p, k, Rational(0), Rational(1)) != monomial_repeated_integral(i, k)) {
                r.passed = false;
                bad << "repeated_integral_poly t^" << i << " k=" << k << "; ";
            }
        }
    for (NodeKind kind : {NodeKind::closed_nc, NodeKind::open_nc}) {
        for (int s = 1; s <= 6; ++s) {
            if (kind == NodeKind::closed_nc && s < 2) continue;
            const int m = nc_parameter_for_stages(kind, s);
            const int d1 = plain_degree(kind, s);
            const auto mod = modified_nc_weights(kind, m, s + 1);
            const auto cau = cauchy_variant_weights(kind, m, s + 1);
            for (int k = 1; k <= s + 1; ++k) {
                const std::string tag = to_string(kind) + " s=" + std::to_string(s);
                record(tag + " modified", k, measured_degree(mod, k, Rational(0), d1 + 3),
                       std::max(s - 1, d1 - (k - 1)));
                record(tag + " cauchy", k, measured_degree(cau, k, Rational(0), d1 + 3), std::max(-1, d1 - (k - 1)));
            }
        }
    }
    for (NodeKind kind : {NodeKind::gauss_legendre, NodeKind::radau_left, NodeKind::radau_right, NodeKind::lobatto}) {
        for (int s = 1; s <= 5; ++s) {
            if (kind == NodeKind::lobatto && s < 2) continue;
            const auto q = gauss_repeated_weights(gauss_nodes(kind, s), s + 1);
            const int d1 = plain_degree(kind, s);
            for (int k = 1; k <= s + 1; ++k)
                record(to_string(kind) + " s=" + std::to_string(s), k,
                       measured_degree(q, k, HighPrec("1e-25"), d1 + 3), std::max(-1, d1 - (k - 1)));
        }
    }
    r.detail = std::to_string(cases) + " (rule, depth) cases";
    if (!r.passed) r.detail += ": " + bad.str();
    return r;
}

PropertyResult linear_stability_equivalence() {
    PropertyResult r{"R(h lambda)^N equivalence", true, ""};
    double worst = 0.0;
    std::string where;
    for (const auto& name : catalog_names()) {
        const ButcherTableau T = catalog(name);
        const StabilityFunction R = stability_function(T);
        for (double lambda : {-1.0, -7.5, -60.0, 2.0}) {
            IVProblem p;
            p.f = [lambda](double, const VecX& y) -> VecX { return lambda * y; };
            p.jacobian = [lambda](double, const VecX&) -> MatX { return MatX::Constant(1, 1, lambda); };
            p.a = 0.0;
            p.b = 1.0;
            p.y0 = VecX::Constant(1, 1.0);
            const int N = 20;
            const double h = 1.0 / N;
            const double got = integrate(T, p, N).values.back()(0);
            const double want = std::pow(R({h * lambda, 0.0}).real(), N);
            const double rel = std::abs(got - want) / std::max(std::abs(want), 1e-300);
            if (rel > worst) {
                worst = rel;
                where = name + " lambda=" + fmt("%g", lambda);
            }
        }
    }
    r.passed = worst <= 1e-10;
    r.detail = "worst relative deviation " + fmt("%.2e", worst) + " (" + where + ")";
    return r;
}

std::vector<ButcherTableau> derived_tableaux() {
    std::vector<ButcherTableau> out;
    for (int s = 2; s <= 6; ++s) {
        out.push_back(derive_closed_nc(s));
        out.push_back(derive_closed_nc(s, true));
    }
    for (int s = 2; s <= 5; ++s) {
        out.push_back(derive_open_nc(s));
        out.push_back(derive_open_nc(s, true));
    }
    for (NodeKind kind : {NodeKind::gauss_legendre, NodeKind::radau_left, NodeKind::radau_right, NodeKind::lobatto})
        for (int s = 2; s <= 5; ++s) out.push_back(derive_gauss(kind, s));
    const std::vector<std::vector<std::string>> grids{
        {"1/4", "1/2", "3/4"}, {"1/5", "2/5", "3/5", "4/5"}, {"0", "1/3", "2/3", "1"}, {"0", "1/4", "1/2", "3/4", "1"}};
    for (const auto& g : grids) {
        std::vector<Rational> taus;
        for (const auto& t : g) taus.push_back(parse_rational(t));
        out.push_back(derive_collocation(taus));
    }
    return out;
}

PropertyResult derived_tableau_invariants() {
    PropertyResult r{"sum b = 1 and row sums", true, ""};
    // Even-stage open Cauchy variants have stage order 0, so C(1) fails.
    const std::set<std::string> no_row_sums{"nIRK2oc", "nIRK4oc"};
    const auto all = derived_tableaux();
    std::ostringstream bad;
    for (const auto& T : all) {
        const bool b_ok = T.is_exact() ? T.b_exact.sum() == Rational(1) : std::abs(T.b.sum() - 1.0) <= 1e-14;
        const bool rows_ok = row_sum_defects(T).empty();
        if (!b_ok || rows_ok == static_cast<bool>(no_row_sums.count(T.name))) {
            r.passed = false;
            bad << T.name << ' ';
        }
    }
    r.detail = std::to_string(all.size()) + " tableaux, row-sum defects only in nIRK2oc and nIRK4oc";
    if (!r.passed) r.detail += "; failing: " + bad.str();
    return r;
}

PropertyResult axis_sampling_consistency() {
    PropertyResult r{"|R(iy)| sampling vs verdict", true, ""};
    // 10^4 points in [-1e6, 1e6], log-spaced on each side of zero.
    std::vector<double> ys;
    const int half = 5000;
    for (int k = 0; k < half; ++k) {
        const double y = std::pow(10.0, -4.0 + 10.0 * k / (half - 1));
        ys.push_back(y);
        ys.push_back(-y);
    }
    std::ostringstream bad;
    int stable = 0, unstable = 0;
    for (const auto& name : catalog_names()) {
        const StabilityFunction R = stability_function(catalog(name));
        const StabilityVerdict v = is_a_stable(R);
        double peak = 0.0;
        for (double y : ys) peak = std::max(peak, std::abs(R({0.0, y})));
        if (v.a_stable) {
            ++stable;
            if (peak > 1.0 + 1e-9) {
                r.passed = false;
                bad << name << " peak " << fmt("%.3e", peak) << "; ";
            }
        } else {
            ++unstable;
            if (peak <= 1.0 + 1e-9 && v.evidence.poles_in_right_half_plane) {
                r.passed = false;
                bad << name << " rejected without evidence; ";
            }
        }
    }
    r.detail = std::to_string(stable) + " A-stable, " + std::to_string(unstable) + " not";
    if (!r.passed) r.detail += ": " + bad.str();
    return r;
}

PropertyResult jacobian_consistency() {
    PropertyResult r{"finite-difference Jacobians", true, ""};
    double worst = 0.0;
    std::string where;
    for (const auto& id : problem_ids()) {
        const NamedProblem np = make_problem(id);
        const IVProblem& p = np.problem;
        if (!p.jacobian) continue;
        for (int k = 0; k <= 10; ++k) {
            const double x = p.a + (p.b - p.a) * k / 10.0;
            const VecX y = p.exact ? VecX(p.exact(x)) : p.y0;
            const MatX J = p.jacobian(x, y);
            const MatX F = finite_difference_jacobian(p, x, y);
            const double err = (J - F).lpNorm<Eigen::Infinity>() / (1.0 + J.lpNorm<Eigen::Infinity>());
            if (err > worst) {
                worst = err;
                where = id + " x=" + fmt("%g", x);
            }
        }
    }
    r.passed = worst <= 1e-6;
    r.detail = "worst scaled deviation " + fmt("%.2e", worst) + " (" + where + ")";
    return r;
}

PropertyResult exact_solution_residuals() {
    PropertyResult r{"exact solutions satisfy the ODE", true, ""};
    double worst = 0.0;
    std::string where;
    for (const auto& id : problem_ids()) {
        const NamedProblem np = make_problem(id);
        const IVProblem& p = np.problem;
        if (!p.exact) continue;
        if ((p.exact(p.a) - p.y0).lpNorm<Eigen::Infinity>() > 1e-12 * (1.0 + p.y0.lpNorm<Eigen::Infinity>())) {
            r.passed = false;
            where = id + " initial value";
        }
        for (int k = 1; k < 50; ++k) {
            const double x = p.a + (p.b - p.a) * k / 50.0;
            const double e = 1e-6 * (p.b - p.a);
            const VecX dy = (p.exact(x + e) - p.exact(x - e)) / (2 * e);
            const VecX f = p.f(x, p.exact(x));
            const double err = (dy - f).lpNorm<Eigen::Infinity>() / (1.0 + f.lpNorm<Eigen::Infinity>());
            if (err > worst) {
                worst = err;
                where = id + " x=" + fmt("%g", x);
            }
        }
    }
    r.passed = r.passed && worst <= 1e-6;
    r.detail = "worst scaled residual " + fmt("%.2e", worst) + " (" + where + ")";
    return r;
}

PropertyResult lambert_residuals() {
    PropertyResult r{"lambert_w_log residual", true, ""};
    const double delta = 0.01;
    const long double A = 1.0L / delta - 1.0L;
    long double worst = 0.0L;
    double where = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double x = 2.0 / delta * k / 999.0;
        const long double c = std::log(A) + A - x;
        const long double w = lambert_w_log(static_cast<double>(c));
        const long double res = std::abs(w + std::log(w) - c) / std::max(1.0L, std::abs(c));
        if (res > worst) {
            worst = res;
            where = x;
        }
    }
    r.passed = worst <= 1e-14L;
    r.detail = "worst scaled residual " + fmt("%.2e", static_cast<double>(worst)) + " at x=" + fmt("%g", where);
    return r;
}

std::vector<PropertyResult> all_properties() {
    return {quadrature_exactness(),     linear_stability_equivalence(), derived_tableau_invariants(),
            axis_sampling_consistency(), jacobian_consistency(),        exact_solution_residuals(),
            lambert_residuals()};
}

}  // namespace irk::props
