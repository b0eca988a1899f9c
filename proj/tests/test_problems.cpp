#include <doctest.h>

#include "irk/problems.hpp"

#include <cmath>

using namespace irk;

TEST_CASE("problem registry") {
    const auto& ids = problem_ids();
    CHECK(ids.size() == 7);
    CHECK_THROWS_AS(make_problem("exp9"), UnknownId);
    CHECK_THROWS_AS(make_problem("exp1", {{"mu", 3.0}}), BadOverride);
}

TEST_CASE("experiment 1 problem") {
    const auto np = make_problem("exp1");
    const auto& p = np.problem;
    CHECK(p.a == 0.0);
    CHECK(p.b == 1.0);
    CHECK(p.y0(0) == 1.0);
    CHECK(p.exact(0.5)(0) == doctest::Approx(std::exp(-7.5)));
    CHECK(p.f(0.0, p.y0)(0) == -15.0);
}

TEST_CASE("experiment 2 problems") {
    const auto a = make_problem("exp2a").problem;
    CHECK(a.b == 0.5);
    CHECK(a.y0(0) == 0.0);
    const double x = 0.3;
    CHECK(a.exact(x)(0) == doctest::Approx(33.0 / 34 * (std::exp(2 * x) - std::exp(-100 * x))));
    const auto b = make_problem("exp2b").problem;
    CHECK(b.b == 10.0);
    CHECK(b.exact(x)(0) == doctest::Approx((std::exp(-2 * x) - std::exp(-1000 * x)) / 998));
}

TEST_CASE("Lambert W in logarithmic form") {
    CHECK(lambert_w_log(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lambert_w_log(std::exp(1.0) + 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    for (double c : {-50.0, -5.0, 0.0, 0.5, 3.0, 40.0, 700.0, 1e5}) {
        const long double w = lambert_w_log(c);
        CHECK(w > 0);
        CHECK(static_cast<double>(std::abs(w + std::log(w) - c)) <= 1e-14 * std::max(1.0, std::abs(c)));
    }
}

TEST_CASE("flame propagation exact solution") {
    CHECK(exp3_exact(0.0, 0.01) == doctest::Approx(0.01).epsilon(1e-12));
    const double end = exp3_exact(200.0, 0.01);
    CHECK(end > 0.99);
    CHECK(end <= 1.0);
    double prev = 0.0;
    for (int k = 0; k <= 200; ++k) {
        const double y = exp3_exact(k, 0.01);
        CHECK(y >= prev);
        prev = y;
    }
    const auto p = make_problem("exp3", {{"delta", 0.02}}).problem;
    CHECK(p.b == doctest::Approx(100.0));
    CHECK(p.y0(0) == doctest::Approx(0.02));
}

TEST_CASE("Prothero-Robinson problems") {
    const auto a = make_problem("exp4a", {{"lambda", -1e4}});
    CHECK(a.params.at("lambda") == -1e4);
    CHECK(a.problem.b == 15.0);
    // The exact solution is phi, so the residual vanishes along it.
    for (double x : {0.0, 1.3, 7.0}) {
        const auto y = a.problem.exact(x);
        CHECK(y(0) == doctest::Approx(std::sin(M_PI / 4 + x)));
        CHECK(a.problem.f(x, y)(0) == doctest::Approx(std::cos(M_PI / 4 + x)));
    }
    const auto b = prothero_robinson(-5.0, PRVariant::b);
    CHECK(b.problem.y0(0) == 10.0);
    const double x = 0.7;
    const double phi = 10 - (10 + x) * std::exp(-x);
    CHECK(b.problem.exact(x)(0) == doctest::Approx(phi + 10 * std::exp(-5.0 * x)));
}

TEST_CASE("Kaps problem is independent of mu along the exact solution") {
    for (double mu : {10.0, 1e3, 1e5}) {
        const auto p = make_problem("exp5", {{"mu", mu}}).problem;
        CHECK(p.dimension == 2);
        const double x = 0.4;
        const VecX y = p.exact(x);
        CHECK(y(0) == doctest::Approx(std::exp(-2 * x)));
        CHECK(y(1) == doctest::Approx(std::exp(-x)));
        const VecX f = p.f(x, y);
        CHECK(f(0) == doctest::Approx(-2 * y(0)));
        CHECK(f(1) == doctest::Approx(-y(1)));
    }
    CHECK(make_problem("exp5").params.at("mu") == 1000.0);
}
