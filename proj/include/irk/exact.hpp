#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace irk {

/// Exact fraction, always kept in canonical form by GMP.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;
/// Runtime-precision float used for Gauss-type constructions.
using HighPrec = boost::multiprecision::mpfr_float;

template <class T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

struct SingularMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

/// Dense univariate polynomial; coefficient k multiplies z^k.
/// Trailing exact zeros are trimmed, so the zero polynomial is empty.
template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
    static Poly monomial(const T& coeff, int k) {
        std::vector<T> c(static_cast<std::size_t>(k) + 1, T(0));
        c.back() = coeff;
        return Poly(std::move(c));
    }
    /// (x - root)
    static Poly linear_factor(const T& root) { return Poly(std::vector<T>{-root, T(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }

    T operator()(const T& x) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        std::vector<T> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * T(static_cast<long>(k)));
        return Poly(std::move(d));
    }

    /// Antiderivative vanishing at 0.
    Poly antiderivative() const {
        std::vector<T> d(c_.size() + 1, T(0));
        for (std::size_t k = 0; k < c_.size(); ++k) d[k + 1] = c_[k] / T(static_cast<long>(k + 1));
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<T> r(a.c_);
        for (auto& v : r) v = -v;
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const T& s, const Poly& a) {
        std::vector<T> r(a.c_);
        for (auto& v : r) v *= s;
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }
    std::vector<T> c_;
};

using RatPoly = Poly<Rational>;

/// Polynomial long division over a field: a = q*b + r, deg r < deg b.
template <class T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& a, const Poly<T>& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<T> rem(a.coeffs());
    const int db = b.degree();
    if (a.degree() < db) return {Poly<T>(), a};
    std::vector<T> quo(static_cast<std::size_t>(a.degree() - db + 1), T(0));
    for (int k = a.degree(); k >= db; --k) {
        T f = rem[static_cast<std::size_t>(k)] / b.leading();
        quo[static_cast<std::size_t>(k - db)] = f;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= f * b.coeff(static_cast<std::size_t>(j));
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Poly<T>(std::move(quo)), Poly<T>(std::move(rem))};
}

/// Monic greatest common divisor (exact scalars only).
RatPoly poly_gcd(RatPoly a, RatPoly b);

/// Exact Gaussian elimination (first nonzero pivot) for Rational,
/// partial pivoting for floating scalars.
template <class T>
Vector<T> solve_linear(Matrix<T> A, Vector<T> b);

/// Same elimination, many right-hand sides at once.
template <class T>
Matrix<T> solve_linear(Matrix<T> A, Matrix<T> B);

/// Determinant of a square matrix of polynomials by cofactor expansion.
template <class T>
Poly<T> poly_matrix_det(const std::vector<std::vector<Poly<T>>>& M);

template <class T>
T integrate_poly(const Poly<T>& p, const T& lo, const T& hi) {
    const Poly<T> P = p.antiderivative();
    return P(hi) - P(lo);
}

BigInt factorial(int n);
BigInt binomial(int n, int k);

/// "p/q", "p", or a plain decimal such as "-0.25" (read exactly).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
/// Correctly rounded conversion.
double to_double(const Rational& q);
/// Exact value of a binary double.
Rational from_double(double v);

}  // namespace irk
