#include <doctest.h>

#include "irk/exact.hpp"

#include <random>

using namespace irk;

namespace {
Rational q(const char* s) { return parse_rational(s); }
}  // namespace

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
    CHECK(q("3/6") == Rational(1, 2));
    CHECK(q("-7") == Rational(-7));
    CHECK(q(" -0.25 ") == Rational(-1, 4));
    CHECK(q("+2/4") == Rational(1, 2));
    CHECK(to_string(q("-10/4")) == "-5/2");
    CHECK(to_string(Rational(3)) == "3");
    CHECK_THROWS_AS(q(""), ParseError);
    CHECK_THROWS_AS(q("1/0"), ParseError);
    CHECK_THROWS_AS(q("a/2"), ParseError);
}

TEST_CASE("double conversions are exact round trips") {
    for (double v : {0.1, -3.75, 1e-300, 123456.789}) CHECK(to_double(from_double(v)) == v);
    CHECK(from_double(0.5) == Rational(1, 2));
    CHECK(to_double(Rational(1, 3)) == 1.0 / 3.0);
}

TEST_CASE("solve_linear on the reference systems") {
    RatMatrix I = RatMatrix::Identity(3, 3);
    RatVector b(3);
    b << q("1/2"), q("2/3"), q("-1");
    CHECK(solve_linear(I, b) == b);

    RatMatrix D(2, 2);
    D << 2, 0, 0, 4;
    RatVector ones(2);
    ones << 1, 1;
    RatVector x = solve_linear(D, ones);
    CHECK(x(0) == Rational(1, 2));
    CHECK(x(1) == Rational(1, 4));

    RatMatrix M(2, 2);
    M << 1, 1, 1, -1;
    RatVector r(2);
    r << 1, 0;
    x = solve_linear(M, r);
    CHECK(x(0) == Rational(1, 2));
    CHECK(x(1) == Rational(1, 2));
}

TEST_CASE("solve_linear needs a pivot in every column") {
    RatMatrix M(2, 2);
    M << 1, 2, 2, 4;
    RatVector r(2);
    r << 1, 1;
    CHECK_THROWS_AS(solve_linear(M, r), SingularMatrix);
}

TEST_CASE("solve_linear residual is exactly zero on random integer systems") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dist(-9, 9);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 4;
        RatMatrix A(n, n);
        RatVector b(n);
        for (int i = 0; i < n; ++i) {
            b(i) = dist(rng);
            for (int j = 0; j < n; ++j) A(i, j) = dist(rng);
            A(i, i) += 40;  // diagonally dominant, hence regular
        }
        const RatVector x = solve_linear(A, b);
        for (int i = 0; i < n; ++i) {
            Rational acc = 0;
            for (int j = 0; j < n; ++j) acc += A(i, j) * x(j);
            CHECK(acc == b(i));
        }
    }
}

TEST_CASE("solve_linear with floating scalars") {
    Eigen::MatrixXd A(2, 2);
    A << 0.0, 1.0, 2.0, 3.0;  // needs a row swap
    Eigen::VectorXd b(2);
    b << 1.0, 5.0;
    const Eigen::VectorXd x = solve_linear<double>(A, b);
    CHECK(x(0) == doctest::Approx(1.0));
    CHECK(x(1) == doctest::Approx(1.0));
}

TEST_CASE("poly_matrix_det") {
    using M = std::vector<std::vector<RatPoly>>;
    CHECK(poly_matrix_det(M{{RatPoly{1}}}) == RatPoly{1});
    const RatPoly one_minus_z{1, -1};
    CHECK(poly_matrix_det(M{{one_minus_z, RatPoly()}, {RatPoly(), one_minus_z}}) == RatPoly{1, -2, 1});
    // 2x2 against ad - bc.
    const RatPoly a{1, 2}, b{0, 1}, c{3}, d{1, 0, 1};
    CHECK(poly_matrix_det(M{{a, b}, {c, d}}) == a * d - b * c);
}

TEST_CASE("integrate_poly") {
    CHECK(integrate_poly(RatPoly{1}, Rational(0), Rational(1)) == 1);
    CHECK(integrate_poly(RatPoly{0, 1}, Rational(0), Rational(1)) == Rational(1, 2));
    CHECK(integrate_poly(RatPoly{0, -1, 1}, Rational(0), Rational(1)) == Rational(-1, 6));
}

TEST_CASE("polynomial arithmetic") {
    const RatPoly p{1, 2, 3};
    CHECK(p.degree() == 2);
    CHECK(p(Rational(2)) == 17);
    CHECK(p.derivative() == RatPoly{2, 6});
    CHECK(p.antiderivative().derivative() == p);
    CHECK((p - p).is_zero());
    const auto [quo, rem] = divmod(p * RatPoly{-1, 1} + RatPoly{5}, RatPoly{-1, 1});
    CHECK(quo == p);
    CHECK(rem == RatPoly{5});
    CHECK(poly_gcd(RatPoly{-1, 0, 1}, RatPoly{1, 1}) == RatPoly{1, 1});
    CHECK(poly_gcd(RatPoly{2, 2}, RatPoly{6, 6}) == RatPoly{1, 1});
}

TEST_CASE("factorial and binomial") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(binomial(6, 2) == 15);
    CHECK(binomial(20, 10) == 184756);
}
