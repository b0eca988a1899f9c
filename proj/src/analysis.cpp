#include "irk/analysis.hpp"

#include <cmath>
#include <functional>

namespace irk {

namespace {

template <class T>
struct Coeffs {
    std::vector<std::vector<T>> A;
    std::vector<T> b, c;
};

Coeffs<Rational> exact_coeffs(const ButcherTableau& T) {
    Coeffs<Rational> k;
    const auto s = static_cast<std::size_t>(T.s);
    k.A.assign(s, std::vector<Rational>(s));
    k.b.resize(s);
    k.c.resize(s);
    for (std::size_t i = 0; i < s; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        k.b[i] = T.b_exact(ii);
        k.c[i] = T.c_exact(ii);
        for (std::size_t j = 0; j < s; ++j) k.A[i][j] = T.A_exact(ii, static_cast<Eigen::Index>(j));
    }
    return k;
}

Coeffs<double> float_coeffs(const ButcherTableau& T) {
    Coeffs<double> k;
    const auto s = static_cast<std::size_t>(T.s);
    k.A.assign(s, std::vector<double>(s));
    k.b.resize(s);
    k.c.resize(s);
    for (std::size_t i = 0; i < s; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        k.b[i] = T.b(ii);
        k.c[i] = T.c(ii);
        for (std::size_t j = 0; j < s; ++j) k.A[i][j] = T.A(ii, static_cast<Eigen::Index>(j));
    }
    return k;
}

template <class T>
using Vec = std::vector<T>;

template <class T>
T dot(const Vec<T>& x, const Vec<T>& y) {
    T acc(0);
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

template <class T>
Vec<T> had(const Vec<T>& x, const Vec<T>& y) {
    Vec<T> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] * y[i];
    return r;
}

template <class T>
Vec<T> mul(const std::vector<Vec<T>>& A, const Vec<T>& x) {
    Vec<T> r(x.size(), T(0));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) r[i] += A[i][j] * x[j];
    return r;
}

template <class T>
Vec<T> power(const Vec<T>& x, int k) {
    Vec<T> r(x.size(), T(1));
    for (int m = 0; m < k; ++m) r = had(r, x);
    return r;
}

template <class T>
Vec<T> Apow(const std::vector<Vec<T>>& A, Vec<T> x, int times) {
    for (int m = 0; m < times; ++m) x = mul(A, x);
    return x;
}

template <class T>
struct Condition {
    std::string id;
    int order;
    std::function<T(const Coeffs<T>&)> lhs;
    Rational rhs;
};

template <class T>
std::vector<Condition<T>> classical_conditions() {
    using K = Coeffs<T>;
    auto bc = [](const K& k, int m) { return dot(k.b, power(k.c, m)); };
    // b . A^n c^m
    auto bAc = [](const K& k, int n, int m) { return dot(k.b, Apow(k.A, power(k.c, m), n)); };
    return {
        {"b.e", 1, [=](const K& k) { return bc(k, 0); }, Rational(1)},
        {"b.c", 2, [=](const K& k) { return bc(k, 1); }, Rational(1, 2)},
        {"b.c^2", 3, [=](const K& k) { return bc(k, 2); }, Rational(1, 3)},
        {"b.Ac", 3, [=](const K& k) { return bAc(k, 1, 1); }, Rational(1, 6)},
        {"b.c^3", 4, [=](const K& k) { return bc(k, 3); }, Rational(1, 4)},
        {"(b*c).Ac", 4, [](const K& k) { return dot(had(k.b, k.c), mul(k.A, k.c)); }, Rational(1, 8)},
        {"b.Ac^2", 4, [=](const K& k) { return bAc(k, 1, 2); }, Rational(1, 12)},
        {"b.AAc", 4, [=](const K& k) { return bAc(k, 2, 1); }, Rational(1, 24)},
        {"b.c^4", 5, [=](const K& k) { return bc(k, 4); }, Rational(1, 5)},
        {"(b*c^2).Ac", 5, [](const K& k) { return dot(had(k.b, power(k.c, 2)), mul(k.A, k.c)); }, Rational(1, 10)},
        {"(b*c).Ac^2", 5, [](const K& k) { return dot(had(k.b, k.c), mul(k.A, power(k.c, 2))); }, Rational(1, 15)},
        {"b.Ac^3", 5, [=](const K& k) { return bAc(k, 1, 3); }, Rational(1, 20)},
        {"b.(Ac*Ac)", 5, [](const K& k) { const auto Ac = mul(k.A, k.c); return dot(k.b, had(Ac, Ac)); }, Rational(1, 20)},
        {"(b*c).AAc", 5, [](const K& k) { return dot(had(k.b, k.c), Apow(k.A, k.c, 2)); }, Rational(1, 30)},
        {"b.A(c*Ac)", 5, [](const K& k) { return dot(k.b, mul(k.A, had(k.c, mul(k.A, k.c)))); }, Rational(1, 40)},
        {"b.AAc^2", 5, [=](const K& k) { return bAc(k, 2, 2); }, Rational(1, 60)},
        {"b.AAAc", 5, [=](const K& k) { return bAc(k, 3, 1); }, Rational(1, 120)},
    };
}

template <class T>
std::vector<Condition<T>> linear_conditions() {
    using K = Coeffs<T>;
    std::vector<Condition<T>> out;
    // Order p contributes b . A^n c^m with n + m = p - 1, m >= 1 (plus b.e).
    for (int p = 1; p <= kLinearCap; ++p) {
        for (int n = 0; n < p; ++n) {
            const int m = p - 1 - n;
            if (m == 0 && p > 1) continue;  // b.A^(p-1) e duplicates b.A^(p-2) c
            std::string id = "b.";
            for (int r = 0; r < n; ++r) id += "A";
            id += m == 0 ? "e" : (m == 1 ? "c" : "c^" + std::to_string(m));
            const Rational rhs = Rational(factorial(m)) / Rational(factorial(m + n + 1));
            out.push_back({id, p, [n, m](const K& k) { return dot(k.b, Apow(k.A, power(k.c, m), n)); }, rhs});
        }
    }
    return out;
}

template <class T>
std::vector<ConditionResidual> evaluate(const std::vector<Condition<T>>& conds, const Coeffs<T>& k) {
    std::vector<ConditionResidual> out;
    for (const auto& cond : conds) {
        ConditionResidual r;
        r.id = cond.id;
        r.order = cond.order;
        if constexpr (is_exact_v<T>) {
            const Rational v = cond.lhs(k) - cond.rhs;
            r.value = to_double(v);
            r.holds = v == 0;
        } else {
            r.value = cond.lhs(k) - to_double(cond.rhs);
            r.holds = std::abs(r.value) < kFloatTol;
        }
        out.push_back(std::move(r));
    }
    return out;
}

int order_from(const std::vector<ConditionResidual>& rs, int cap) {
    int p = 0;
    for (int q = 1; q <= cap; ++q) {
        for (const auto& r : rs)
            if (r.order == q && !r.holds) return p;
        p = q;
    }
    return p;
}

template <class T>
bool near_zero(const T& v) {
    if constexpr (is_exact_v<T>)
        return v == 0;
    else
        return std::abs(v) < kFloatTol;
}

template <class T>
bool holds_B(const Coeffs<T>& k, int m) {
    return near_zero(dot(k.b, power(k.c, m - 1)) - T(1) / T(m));
}

template <class T>
bool holds_C(const Coeffs<T>& k, int m) {
    const auto lhs = mul(k.A, power(k.c, m - 1));
    const auto ck = power(k.c, m);
    for (std::size_t i = 0; i < lhs.size(); ++i)
        if (!near_zero(lhs[i] - ck[i] / T(m))) return false;
    return true;
}

template <class T>
bool holds_D(const Coeffs<T>& k, int m) {
    const auto w = had(k.b, power(k.c, m - 1));
    const auto ck = power(k.c, m);
    for (std::size_t j = 0; j < k.b.size(); ++j) {
        T lhs(0);
        for (std::size_t i = 0; i < k.b.size(); ++i) lhs += w[i] * k.A[i][j];
        if (!near_zero(lhs - k.b[j] * (T(1) - ck[j]) / T(m))) return false;
    }
    return true;
}

template <class Fn>
bool dispatch(const ButcherTableau& T, Fn&& fn) {
    if (T.is_exact()) return fn(exact_coeffs(T));
    return fn(float_coeffs(T));
}

int max_holding(const ButcherTableau& T, bool (*test)(const ButcherTableau&, int)) {
    int k = 0;
    while (k < kSimplifyingCap && test(T, k + 1)) ++k;
    return k;
}

Poly<Rational> snap_to_rational(const Poly<double>& p, double rel) {
    double big = 0.0;
    for (double v : p.coeffs()) big = std::max(big, std::abs(v));
    std::vector<Rational> out;
    for (double v : p.coeffs()) out.push_back(std::abs(v) < rel * big ? Rational(0) : from_double(v));
    return RatPoly(std::move(out));
}

Poly<double> to_double_poly(const RatPoly& p) {
    std::vector<double> out;
    for (const auto& v : p.coeffs()) out.push_back(to_double(v));
    return Poly<double>(std::move(out));
}

/// Real and imaginary parts of P(iy) as polynomials in y.
std::pair<RatPoly, RatPoly> on_imaginary_axis(const RatPoly& P) {
    std::vector<Rational> re(P.coeffs().size(), Rational(0)), im(P.coeffs().size(), Rational(0));
    for (std::size_t k = 0; k < P.coeffs().size(); ++k) {
        const Rational sign = (k / 2) % 2 == 0 ? Rational(1) : Rational(-1);
        (k % 2 == 0 ? re : im)[k] = sign * P.coeffs()[k];
    }
    return {RatPoly(std::move(re)), RatPoly(std::move(im))};
}

std::vector<std::vector<Rational>> routh_table(const RatPoly& p) {
    const int n = p.degree();
    const std::size_t width = static_cast<std::size_t>(n / 2 + 1);
    std::vector<std::vector<Rational>> rows(2, std::vector<Rational>(width, Rational(0)));
    for (int k = n, idx = 0; k >= 0; --k, ++idx)
        rows[static_cast<std::size_t>(idx % 2)][static_cast<std::size_t>(idx / 2)] = p.coeff(static_cast<std::size_t>(k));
    if (n == 0) rows.pop_back();
    for (int i = 2; i <= n; ++i) {
        const auto& r1 = rows[static_cast<std::size_t>(i - 1)];
        const auto& r2 = rows[static_cast<std::size_t>(i - 2)];
        std::vector<Rational> next(width, Rational(0));
        if (r1[0] == 0) {
            rows.push_back(next);
            break;
        }
        for (std::size_t j = 0; j + 1 < width; ++j) next[j] = (r1[0] * r2[j + 1] - r2[0] * r1[j + 1]) / r1[0];
        rows.push_back(std::move(next));
    }
    return rows;
}

}  // namespace

bool OrderReport::classical_at_cap() const { return classical_order >= kClassicalCap; }
bool OrderReport::linear_at_cap() const { return linear_order >= kLinearCap; }

OrderReport check_order_conditions(const ButcherTableau& T) {
    OrderReport rep;
    if (T.is_exact()) {
        const auto k = exact_coeffs(T);
        rep.classical = evaluate(classical_conditions<Rational>(), k);
        rep.linear = evaluate(linear_conditions<Rational>(), k);
    } else {
        const auto k = float_coeffs(T);
        rep.classical = evaluate(classical_conditions<double>(), k);
        rep.linear = evaluate(linear_conditions<double>(), k);
    }
    rep.classical_order = order_from(rep.classical, kClassicalCap);
    rep.linear_order = order_from(rep.linear, kLinearCap);
    for (const auto& r : rep.linear) rep.linear_conditions_satisfied += r.holds ? 1 : 0;
    for (const auto& r : rep.classical) rep.residuals["T:" + r.id] = r.value;
    for (const auto& r : rep.linear) rep.residuals["L:" + r.id] = r.value;
    return rep;
}

bool condition_B(const ButcherTableau& T, int k) {
    return dispatch(T, [k](const auto& c) { return holds_B(c, k); });
}
bool condition_C(const ButcherTableau& T, int k) {
    return dispatch(T, [k](const auto& c) { return holds_C(c, k); });
}
bool condition_D(const ButcherTableau& T, int k) {
    return dispatch(T, [k](const auto& c) { return holds_D(c, k); });
}

SimplifyingTriple simplifying_triple(const ButcherTableau& T) {
    SimplifyingTriple t;
    t.p = max_holding(T, condition_B);
    t.q = max_holding(T, condition_C);
    t.r = max_holding(T, condition_D);
    if (t.p <= t.q + t.r + 1 && t.p <= 2 * t.q + 2) t.certified_order = t.p;
    t.guaranteed_order = std::min({t.p, t.q + t.r + 1, 2 * t.q + 2});
    return t;
}

int stage_order(const ButcherTableau& T) {
    const auto t = simplifying_triple(T);
    return std::min(t.p, t.q);
}

int method_order(const ButcherTableau& T) {
    const auto t = simplifying_triple(T);
    if (t.certified_order) return *t.certified_order;
    return check_order_conditions(T).classical_order;
}

std::complex<double> StabilityFunction::operator()(std::complex<double> z) const {
    auto eval = [&](const Poly<double>& p) {
        std::complex<double> acc(0.0);
        for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * z + *it;
        return acc;
    };
    return eval(numerator) / eval(denominator);
}

StabilityFunction stability_function(const ButcherTableau& T) {
    StabilityFunction R;
    R.mode = T.mode;
    const auto s = static_cast<std::size_t>(T.s);
    auto build = [&](auto zero, auto a, auto b) {
        using S = decltype(zero);
        std::vector<std::vector<Poly<S>>> num(s, std::vector<Poly<S>>(s)), den(s, std::vector<Poly<S>>(s));
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) {
                const S delta = i == j ? S(1) : S(0);
                den[i][j] = Poly<S>{delta, S(-a(i, j))};
                num[i][j] = Poly<S>{delta, S(b(j) - a(i, j))};
            }
        return std::pair{poly_matrix_det(num), poly_matrix_det(den)};
    };
    if (T.is_exact()) {
        auto [n, d] = build(
            Rational(0), [&](std::size_t i, std::size_t j) { return Rational(T.A_exact(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))); },
            [&](std::size_t j) { return Rational(T.b_exact(static_cast<Eigen::Index>(j))); });
        if (d.is_zero()) throw DegenerateDenominator("stability function denominator vanishes");
        const Rational d0 = d.coeff(0);
        R.numerator_exact = (Rational(1) / d0) * n;
        R.denominator_exact = (Rational(1) / d0) * d;
    } else {
        auto [n, d] = build(
            0.0, [&](std::size_t i, std::size_t j) { return T.A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); },
            [&](std::size_t j) { return T.b(static_cast<Eigen::Index>(j)); });
        if (d.is_zero()) throw DegenerateDenominator("stability function denominator vanishes");
        const double d0 = d.coeff(0);
        R.numerator_exact = snap_to_rational((1.0 / d0) * n, 1e-12);
        R.denominator_exact = snap_to_rational((1.0 / d0) * d, 1e-12);
    }
    R.numerator = to_double_poly(R.numerator_exact);
    R.denominator = to_double_poly(R.denominator_exact);
    return R;
}

std::vector<std::pair<RatPoly, int>> square_free_decomposition(const RatPoly& f) {
    std::vector<std::pair<RatPoly, int>> out;
    if (f.degree() < 1) return out;
    const RatPoly monic = (Rational(1) / f.leading()) * f;
    const RatPoly a0 = poly_gcd(monic, monic.derivative());
    RatPoly b = divmod(monic, a0).first;
    RatPoly c = divmod(monic.derivative(), a0).first;
    RatPoly d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        const RatPoly a = poly_gcd(b, d);
        b = divmod(b, a).first;
        c = divmod(d, a).first;
        d = c - b.derivative();
        if (a.degree() > 0) out.emplace_back(a, i);
    }
    return out;
}

int count_roots_above(const RatPoly& f_in, const Rational& lo) {
    if (f_in.degree() < 1) return 0;
    RatPoly f = f_in;
    // Sturm counting needs a square-free input that does not vanish at lo.
    const RatPoly g = poly_gcd(f, f.derivative());
    if (g.degree() > 0) f = divmod(f, g).first;
    while (f.degree() > 0 && f(lo) == 0) f = divmod(f, RatPoly::linear_factor(lo)).first;
    if (f.degree() < 1) return 0;

    std::vector<RatPoly> seq{f, f.derivative()};
    while (seq.back().degree() > 0) {
        RatPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    auto variations = [](const std::vector<int>& signs) {
        int v = 0, prev = 0;
        for (int sgn : signs) {
            if (sgn == 0) continue;
            if (prev != 0 && sgn != prev) ++v;
            prev = sgn;
        }
        return v;
    };
    std::vector<int> at_lo, at_inf;
    for (const auto& p : seq) {
        const Rational v = p(lo);
        at_lo.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0));
        at_inf.push_back(p.leading() > 0 ? 1 : (p.leading() < 0 ? -1 : 0));
    }
    return variations(at_lo) - variations(at_inf);
}

StabilityVerdict is_a_stable(const StabilityFunction& R) {
    StabilityVerdict v;
    auto& ev = v.evidence;
    const RatPoly& num = R.numerator_exact;
    const RatPoly& den = R.denominator_exact;
    if (den.is_zero()) throw DegenerateDenominator("stability function denominator vanishes");

    // Poles of R are the roots of den; reflect so the Hurwitz test applies.
    std::vector<Rational> reflected;
    for (std::size_t k = 0; k < den.coeffs().size(); ++k)
        reflected.push_back(k % 2 == 0 ? den.coeffs()[k] : Rational(-den.coeffs()[k]));
    RatPoly p(std::move(reflected));
    if (p.leading() < 0) p = -p;
    ev.routh = routh_table(p);
    ev.poles_in_right_half_plane = true;
    for (const auto& row : ev.routh)
        if (!(row[0] > 0)) ev.poles_in_right_half_plane = false;

    const auto [dre, dim] = on_imaginary_axis(den);
    const auto [nre, nim] = on_imaginary_axis(num);
    const RatPoly Ey = dre * dre + dim * dim - nre * nre - nim * nim;
    std::vector<Rational> eu;
    for (std::size_t k = 0; k < Ey.coeffs().size(); k += 2) eu.push_back(Ey.coeffs()[k]);
    RatPoly E(std::move(eu));
    if (R.mode == Mode::floating) {
        // Snap each coefficient against the size of the terms that cancel in it.
        auto absolute = [](const RatPoly& p) {
            std::vector<Rational> a;
            for (const auto& c : p.coeffs()) a.push_back(abs(c));
            return RatPoly(std::move(a));
        };
        const RatPoly scale = absolute(dre) * absolute(dre) + absolute(dim) * absolute(dim) +
                              absolute(nre) * absolute(nre) + absolute(nim) * absolute(nim);
        std::vector<Rational> snapped;
        for (std::size_t k = 0; k < E.coeffs().size(); ++k) {
            const Rational tol = scale.coeff(2 * k) * Rational(1, 10000000000LL);
            snapped.push_back(abs(E.coeffs()[k]) <= tol ? Rational(0) : E.coeffs()[k]);
        }
        E = RatPoly(std::move(snapped));
    }
    ev.E = E;

    if (E.is_zero()) {
        ev.imaginary_axis_bounded = true;
    } else {
        RatPoly core = E;
        while (core.coeff(0) == 0) core = divmod(core, RatPoly{Rational(0), Rational(1)}).first;
        RatPoly odd = RatPoly::constant(Rational(1));
        for (const auto& [factor, mult] : square_free_decomposition(core))
            if (mult % 2 == 1) odd *= factor;
        const bool sign_change = odd.degree() > 0 && count_roots_above(odd, Rational(0)) > 0;
        ev.imaginary_axis_bounded = !sign_change && E.leading() > 0;
    }

    v.a_stable = ev.poles_in_right_half_plane && ev.imaginary_axis_bounded;
    if (!ev.poles_in_right_half_plane)
        ev.reason = "denominator has a root with nonpositive real part";
    else if (!ev.imaginary_axis_bounded)
        ev.reason = "|R(iy)| exceeds 1 somewhere on the imaginary axis";
    else
        ev.reason = "poles in the right half-plane and |R(iy)| <= 1";
    return v;
}

}  // namespace irk
