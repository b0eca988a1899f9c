#include "irk/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace irk {

namespace {

VecX scalar(double v) { return VecX::Constant(1, v); }
MatX scalar_matrix(double v) { return MatX::Constant(1, 1, v); }

IVProblem scalar_problem(std::function<double(double, double)> f, std::function<double(double, double)> df, double a,
                         double b, double y0, std::function<double(double)> exact) {
    IVProblem p;
    p.dimension = 1;
    p.f = [f](double x, const VecX& y) { return scalar(f(x, y(0))); };
    p.jacobian = [df](double x, const VecX& y) { return scalar_matrix(df(x, y(0))); };
    p.a = a;
    p.b = b;
    p.y0 = scalar(y0);
    p.exact = [exact](double x) { return scalar(exact(x)); };
    return p;
}

double take(std::map<std::string, double>& params, const std::map<std::string, double>& overrides,
            const std::string& key, double fallback) {
    const auto it = overrides.find(key);
    const double v = it == overrides.end() ? fallback : it->second;
    params[key] = v;
    return v;
}

void check_overrides(std::string_view id, const std::map<std::string, double>& overrides,
                     const std::vector<std::string>& allowed) {
    for (const auto& [k, v] : overrides) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw BadOverride("parameter '" + k + "' cannot be set for " + std::string(id));
        if (!std::isfinite(v)) throw BadOverride("parameter '" + k + "' must be finite");
    }
}

}  // namespace

const std::vector<std::string>& problem_ids() {
    static const std::vector<std::string> ids{"exp1", "exp2a", "exp2b", "exp3", "exp4a", "exp4b", "exp5"};
    return ids;
}

double lambert_w_log(double c) {
    if (!std::isfinite(c)) throw NoConvergence("lambert_w_log: non-finite argument");
    constexpr int max_iter = 100;
    long double w;
    if (c >= 1.0) {
        // Newton on g(w) = w + ln w - c.
        w = static_cast<long double>(c) - std::log(std::max<long double>(c, 1.0L));
        for (int it = 0;; ++it) {
            if (it == max_iter) throw NoConvergence("lambert_w_log: Newton did not converge");
            const long double g = w + std::log(w) - c;
            const long double step = g / (1.0L + 1.0L / w);
            w -= step;
            if (w <= 0) w = 1e-300L;
            if (std::abs(step) <= 1e-18L * w) break;
        }
    } else {
        // Small w: Newton on e^v + v = c with v = ln w.
        long double v = c;
        for (int it = 0;; ++it) {
            if (it == max_iter) throw NoConvergence("lambert_w_log: Newton did not converge");
            const long double ev = std::exp(v);
            const long double step = (ev + v - c) / (ev + 1.0L);
            v -= step;
            if (std::abs(step) <= 1e-18L * (1.0L + std::abs(v))) break;
        }
        w = std::exp(v);
    }
    return static_cast<double>(w);
}

double exp3_exact(double x, double delta) {
    const double A = 1.0 / delta - 1.0;
    return 1.0 / (lambert_w_log(std::log(A) + A - x) + 1.0);
}

NamedProblem prothero_robinson(double lambda, PRVariant variant) {
    if (!(lambda < 0.0)) throw BadOverride("prothero_robinson: lambda must be negative");
    NamedProblem np;
    np.params["lambda"] = lambda;
    if (variant == PRVariant::a) {
        np.id = "exp4a";
        auto phi = [](double x) { return std::sin(std::numbers::pi / 4 + x); };
        auto dphi = [](double x) { return std::cos(std::numbers::pi / 4 + x); };
        np.problem = scalar_problem([=](double x, double y) { return lambda * (y - phi(x)) + dphi(x); },
                                    [=](double, double) { return lambda; }, 0.0, 15.0, std::sqrt(2.0) / 2, phi);
    } else {
        np.id = "exp4b";
        auto phi = [](double x) { return 10.0 - (10.0 + x) * std::exp(-x); };
        auto dphi = [](double x) { return (9.0 + x) * std::exp(-x); };
        np.problem = scalar_problem([=](double x, double y) { return lambda * (y - phi(x)) + dphi(x); },
                                    [=](double, double) { return lambda; }, 0.0, 15.0, 10.0,
                                    [=](double x) { return phi(x) + 10.0 * std::exp(lambda * x); });
    }
    return np;
}

NamedProblem make_problem(std::string_view id, const std::map<std::string, double>& overrides) {
    NamedProblem np;
    np.id = std::string(id);
    if (id == "exp1") {
        check_overrides(id, overrides, {});
        np.problem = scalar_problem([](double, double y) { return -15.0 * y; }, [](double, double) { return -15.0; }, 0.0,
                                    1.0, 1.0, [](double x) { return std::exp(-15.0 * x); });
    } else if (id == "exp2a") {
        check_overrides(id, overrides, {});
        np.problem = scalar_problem([](double x, double y) { return -100.0 * y + 99.0 * std::exp(2.0 * x); },
                                    [](double, double) { return -100.0; }, 0.0, 0.5, 0.0,
                                    [](double x) { return 33.0 / 34.0 * (std::exp(2.0 * x) - std::exp(-100.0 * x)); });
    } else if (id == "exp2b") {
        check_overrides(id, overrides, {});
        np.problem = scalar_problem([](double x, double y) { return -1000.0 * y + std::exp(-2.0 * x); },
                                    [](double, double) { return -1000.0; }, 0.0, 10.0, 0.0,
                                    [](double x) { return (std::exp(-2.0 * x) - std::exp(-1000.0 * x)) / 998.0; });
    } else if (id == "exp3") {
        check_overrides(id, overrides, {"delta"});
        const double delta = take(np.params, overrides, "delta", 0.01);
        if (!(delta > 0.0 && delta < 1.0)) throw BadOverride("delta must lie in (0, 1)");
        np.problem = scalar_problem([](double, double y) { return y * y - y * y * y; },
                                    [](double, double y) { return 2.0 * y - 3.0 * y * y; }, 0.0, 2.0 / delta, delta,
                                    [delta](double x) { return exp3_exact(x, delta); });
    } else if (id == "exp4a") {
        check_overrides(id, overrides, {"lambda"});
        const auto it = overrides.find("lambda");
        np = prothero_robinson(it == overrides.end() ? -1e6 : it->second, PRVariant::a);
    } else if (id == "exp4b") {
        check_overrides(id, overrides, {});
        np = prothero_robinson(-200.0, PRVariant::b);
    } else if (id == "exp5") {
        check_overrides(id, overrides, {"mu"});
        const double mu = take(np.params, overrides, "mu", 1000.0);
        IVProblem& p = np.problem;
        p.dimension = 2;
        p.f = [mu](double, const VecX& y) {
            VecX r(2);
            r << -(mu + 2.0) * y(0) + mu * y(1) * y(1), y(0) - y(1) - y(1) * y(1);
            return r;
        };
        p.jacobian = [mu](double, const VecX& y) {
            MatX J(2, 2);
            J << -(mu + 2.0), 2.0 * mu * y(1), 1.0, -1.0 - 2.0 * y(1);
            return J;
        };
        p.a = 0.0;
        p.b = 1.0;
        p.y0 = VecX::Ones(2);
        p.exact = [](double x) {
            VecX r(2);
            r << std::exp(-2.0 * x), std::exp(-x);
            return r;
        };
    } else {
        throw UnknownId("unknown problem id: " + std::string(id));
    }
    return np;
}

}  // namespace irk
