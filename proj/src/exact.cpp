#include "irk/exact.hpp"

#include <cctype>
#include <cmath>

namespace irk {

namespace {

template <class T>
bool pivot_better(const T& cand, const T& best) {
    if constexpr (is_exact_v<T>) {
        return best == 0 && cand != 0;
    } else {
        using std::abs;
        return abs(cand) > abs(best);
    }
}

template <class T>
Poly<T> det_rec(const std::vector<std::vector<Poly<T>>>& M) {
    const std::size_t n = M.size();
    if (n == 0) return Poly<T>::constant(T(1));
    if (n == 1) return M[0][0];
    if (n == 2) return M[0][0] * M[1][1] - M[0][1] * M[1][0];
    Poly<T> acc;
    for (std::size_t col = 0; col < n; ++col) {
        if (M[0][col].is_zero()) continue;
        std::vector<std::vector<Poly<T>>> minor(n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (j != col) minor[i - 1].push_back(M[i][j]);
        Poly<T> term = M[0][col] * det_rec(minor);
        acc = (col % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace

template <class T>
Matrix<T> solve_linear(Matrix<T> A, Matrix<T> B) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n || B.rows() != n) throw std::invalid_argument("solve_linear: dimension mismatch");
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index piv = k;
        for (Eigen::Index i = k + 1; i < n; ++i)
            if (pivot_better(A(i, k), A(piv, k))) piv = i;
        if (A(piv, k) == T(0))
            throw SingularMatrix("singular matrix: no pivot in column " + std::to_string(k));
        if (piv != k) {
            A.row(k).swap(A.row(piv));
            B.row(k).swap(B.row(piv));
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            if (A(i, k) == T(0)) continue;
            T f = A(i, k) / A(k, k);
            for (Eigen::Index j = k; j < n; ++j) A(i, j) -= f * A(k, j);
            for (Eigen::Index j = 0; j < B.cols(); ++j) B(i, j) -= f * B(k, j);
        }
    }
    Matrix<T> X(n, B.cols());
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        for (Eigen::Index j = 0; j < B.cols(); ++j) {
            T acc = B(i, j);
            for (Eigen::Index m = i + 1; m < n; ++m) acc -= A(i, m) * X(m, j);
            X(i, j) = acc / A(i, i);
        }
    }
    return X;
}

template <class T>
Vector<T> solve_linear(Matrix<T> A, Vector<T> b) {
    Matrix<T> B = b;
    return solve_linear<T>(std::move(A), std::move(B)).col(0);
}

template <class T>
Poly<T> poly_matrix_det(const std::vector<std::vector<Poly<T>>>& M) {
    for (const auto& row : M)
        if (row.size() != M.size()) throw std::invalid_argument("poly_matrix_det: matrix not square");
    return det_rec(M);
}

template Matrix<Rational> solve_linear<Rational>(Matrix<Rational>, Matrix<Rational>);
template Matrix<double> solve_linear<double>(Matrix<double>, Matrix<double>);
template Matrix<HighPrec> solve_linear<HighPrec>(Matrix<HighPrec>, Matrix<HighPrec>);
template Vector<Rational> solve_linear<Rational>(Matrix<Rational>, Vector<Rational>);
template Vector<double> solve_linear<double>(Matrix<double>, Vector<double>);
template Vector<HighPrec> solve_linear<HighPrec>(Matrix<HighPrec>, Vector<HighPrec>);
template Poly<Rational> poly_matrix_det<Rational>(const std::vector<std::vector<Poly<Rational>>>&);
template Poly<double> poly_matrix_det<double>(const std::vector<std::vector<Poly<double>>>&);

RatPoly poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return (Rational(1) / a.leading()) * a;
}

BigInt factorial(int n) {
    BigInt r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

Rational parse_rational(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ParseError("empty rational");
    auto parse_int = [&](const std::string& t) {
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw ParseError("bad rational: " + s);
        for (std::size_t k = i; k < t.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(t[k]))) throw ParseError("bad rational: " + s);
        return BigInt(t[0] == '+' ? t.substr(1) : t);
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        BigInt num = parse_int(s.substr(0, slash));
        BigInt den = parse_int(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator: " + s);
        return Rational(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
        if (whole.empty()) whole = "0";
        if (frac.empty()) frac = "0";
        if (frac[0] == '-' || frac[0] == '+') throw ParseError("bad rational: " + s);
        Rational v = Rational(parse_int(whole)) + Rational(parse_int(frac), pow(BigInt(10), frac.size()));
        return neg ? Rational(-v) : v;
    }
    return Rational(parse_int(s));
}

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q) {
    boost::multiprecision::mpfr_float_100 v(q);
    return v.convert_to<double>();
}

Rational from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("from_double: non-finite value");
    return Rational(v);
}

}  // namespace irk
