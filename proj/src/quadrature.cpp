#include "irk/quadrature.hpp"

#include <cstdlib>

namespace irk {

namespace {

template <class T>
T from_bigint(const BigInt& v) {
    if constexpr (std::is_same_v<T, double>)
        return v.convert_to<double>();
    else
        return T(v);
}

template <class T>
T ipow(const T& base, int e) {
    T r(1);
    for (int k = 0; k < e; ++k) r *= base;
    return r;
}

int sign_of(const Rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

void check_nc(NodeKind kind, int m, int S) {
    if (!is_newton_cotes(kind)) throw WrongKind("Newton-Cotes weights requested for " + to_string(kind));
    if (kind == NodeKind::closed_nc && m < 2) throw InvalidNodeCount("closed Newton-Cotes needs m >= 2");
    if (kind == NodeKind::open_nc && m < 3) throw InvalidNodeCount("open Newton-Cotes needs m - 2 >= 1");
    if (S < 1) throw InvalidNodeCount("repetition depth must be >= 1");
}

RepeatedQuadrature<Rational> nc_shell(NodeKind kind, int m, int S) {
    check_nc(kind, m, S);
    RepeatedQuadrature<Rational> q;
    q.node_set = newton_cotes_nodes(kind, m);
    q.depth = S;
    q.spacing = Rational(1, m - 1);
    const auto n = static_cast<Eigen::Index>(q.node_set.nodes.size());
    q.unit = RatMatrix::Zero(S, n);
    q.weights = RatMatrix::Zero(S, n);
    return q;
}

void fill_nc_weights(RepeatedQuadrature<Rational>& q) {
    for (int k = 1; k <= q.depth; ++k) {
        Rational Hk = ipow(q.spacing, k);
        for (Eigen::Index j = 0; j < q.unit.cols(); ++j) q.weights(k - 1, j) = q.unit(k - 1, j) / Hk;
    }
}

int& digits_setting() {
    static int digits = [] {
        if (const char* env = std::getenv("IRK_PRECISION_DIGITS")) {
            int v = std::atoi(env);
            if (v >= 20 && v <= 1000) return v;
        }
        return 30;
    }();
    return digits;
}

void use_working_precision() { HighPrec::default_precision(static_cast<unsigned>(precision_digits() + 10)); }

HighPrec refine_root(const RatPoly& p, const Rational& lo_q, const Rational& hi_q) {
    std::vector<HighPrec> c;
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    Poly<HighPrec> ph(std::move(c));
    Poly<HighPrec> dp = ph.derivative();
    HighPrec lo(lo_q), hi(hi_q);
    const bool lo_neg = ph(lo) < 0;
    for (int it = 0; it < 40; ++it) {
        HighPrec mid = (lo + hi) / 2;
        if ((ph(mid) < 0) == lo_neg)
            lo = mid;
        else
            hi = mid;
    }
    HighPrec x = (lo + hi) / 2;
    const HighPrec eps = pow(HighPrec(10), -(precision_digits() + 5));
    for (int it = 0; it < 60; ++it) {
        HighPrec dx = ph(x) / dp(x);
        x -= dx;
        if (abs(dx) < eps) break;
    }
    return x;
}

}  // namespace

std::string to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::closed_nc: return "closed_nc";
        case NodeKind::open_nc: return "open_nc";
        case NodeKind::gauss_legendre: return "gauss_legendre";
        case NodeKind::radau_left: return "radau_left";
        case NodeKind::radau_right: return "radau_right";
        case NodeKind::lobatto: return "lobatto";
    }
    return "unknown";
}

bool is_newton_cotes(NodeKind kind) { return kind == NodeKind::closed_nc || kind == NodeKind::open_nc; }

template <class T>
std::vector<Poly<T>> lagrange_basis(const std::vector<T>& nodes) {
    const std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (nodes[i] == nodes[j]) throw DuplicateNodes("duplicate interpolation nodes");
    std::vector<Poly<T>> basis;
    basis.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Poly<T> l = Poly<T>::constant(T(1));
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            l = (T(1) / (nodes[i] - nodes[j])) * (l * Poly<T>::linear_factor(nodes[j]));
        }
        basis.push_back(std::move(l));
    }
    return basis;
}

template <class T>
T repeated_integral_poly(const Poly<T>& p, int S, const T& lo, const T& hi) {
    if (S < 1) throw std::invalid_argument("repeated_integral_poly: S must be >= 1");
    Poly<T> kernel = Poly<T>::constant(T(1));
    const Poly<T> lin(std::vector<T>{hi, T(-1)});
    for (int k = 1; k < S; ++k) kernel = kernel * lin;
    return integrate_poly(kernel * p, lo, hi) / from_bigint<T>(factorial(S - 1));
}

template <class T>
std::vector<T> interpolatory_weights(const std::vector<T>& nodes) {
    std::vector<T> w;
    for (const auto& l : lagrange_basis(nodes)) w.push_back(integrate_poly(l, T(0), T(1)));
    return w;
}

template std::vector<Poly<Rational>> lagrange_basis<Rational>(const std::vector<Rational>&);
template std::vector<Poly<HighPrec>> lagrange_basis<HighPrec>(const std::vector<HighPrec>&);
template std::vector<Poly<double>> lagrange_basis<double>(const std::vector<double>&);
template Rational repeated_integral_poly<Rational>(const Poly<Rational>&, int, const Rational&, const Rational&);
template HighPrec repeated_integral_poly<HighPrec>(const Poly<HighPrec>&, int, const HighPrec&, const HighPrec&);
template double repeated_integral_poly<double>(const Poly<double>&, int, const double&, const double&);
template std::vector<Rational> interpolatory_weights<Rational>(const std::vector<Rational>&);
template std::vector<HighPrec> interpolatory_weights<HighPrec>(const std::vector<HighPrec>&);

NodeSet<Rational> newton_cotes_nodes(NodeKind kind, int m) {
    check_nc(kind, m, 1);
    NodeSet<Rational> ns{kind, {}};
    if (kind == NodeKind::closed_nc) {
        for (int j = 0; j < m; ++j) ns.nodes.emplace_back(j, m - 1);
    } else {
        for (int j = 1; j <= m - 2; ++j) ns.nodes.emplace_back(j, m - 1);
    }
    return ns;
}

int nc_parameter_for_stages(NodeKind kind, int s) {
    if (!is_newton_cotes(kind)) throw WrongKind("not a Newton-Cotes kind");
    return kind == NodeKind::closed_nc ? s : s + 2;
}

NodeSet<Rational> newton_cotes_stage_nodes(NodeKind kind, int s) {
    return newton_cotes_nodes(kind, nc_parameter_for_stages(kind, s));
}

RepeatedQuadrature<Rational> modified_nc_weights(NodeKind kind, int m, int S) {
    auto q = nc_shell(kind, m, S);
    const auto basis = lagrange_basis(q.node_set.nodes);
    for (int k = 1; k <= S; ++k)
        for (std::size_t j = 0; j < basis.size(); ++j)
            q.unit(k - 1, static_cast<Eigen::Index>(j)) = repeated_integral_poly(basis[j], k, Rational(0), Rational(1));
    fill_nc_weights(q);
    return q;
}

RepeatedQuadrature<Rational> cauchy_variant_weights(NodeKind kind, int m, int S) {
    auto q = nc_shell(kind, m, S);
    const auto w1 = interpolatory_weights(q.node_set.nodes);
    for (int k = 1; k <= S; ++k) {
        Rational inv_fact = Rational(1) / Rational(factorial(k - 1));
        for (std::size_t j = 0; j < w1.size(); ++j)
            q.unit(k - 1, static_cast<Eigen::Index>(j)) = w1[j] * ipow(Rational(1) - q.node_set.nodes[j], k - 1) * inv_fact;
    }
    fill_nc_weights(q);
    return q;
}

int precision_digits() { return digits_setting(); }

void set_precision_digits(int digits) {
    if (digits < 20) throw std::invalid_argument("precision below 20 digits is not supported");
    digits_setting() = digits;
}

RatPoly shifted_legendre(int n) {
    std::vector<Rational> c;
    for (int k = 0; k <= n; ++k) {
        Rational v(binomial(n, k) * binomial(n + k, k));
        c.push_back((n + k) % 2 == 0 ? v : Rational(-v));
    }
    return RatPoly(std::move(c));
}

RatPoly gauss_node_polynomial(NodeKind kind, int s) {
    switch (kind) {
        case NodeKind::gauss_legendre: return shifted_legendre(s);
        case NodeKind::radau_left: return shifted_legendre(s) + shifted_legendre(s - 1);
        case NodeKind::radau_right: return shifted_legendre(s) - shifted_legendre(s - 1);
        case NodeKind::lobatto: return shifted_legendre(s) - shifted_legendre(s - 2);
        default: throw WrongKind("no Gauss polynomial for " + to_string(kind));
    }
}

NodeSet<HighPrec> gauss_nodes(NodeKind kind, int s) {
    if (is_newton_cotes(kind)) throw WrongKind("gauss_nodes called with " + to_string(kind));
    const int smin = kind == NodeKind::lobatto ? 2 : 1;
    if (s < smin || s > 6) throw Unsupported("unsupported stage count " + std::to_string(s) + " for " + to_string(kind));
    use_working_precision();
    const RatPoly p = gauss_node_polynomial(kind, s);
    const int grid = 10 * s;
    NodeSet<HighPrec> ns{kind, {}};
    Rational prev_x;
    int prev_sign = 0;
    for (int j = 0; j <= grid; ++j) {
        Rational x(j, grid);
        int sg = sign_of(p(x));
        if (sg == 0) {
            ns.nodes.emplace_back(x);
        } else if (prev_sign != 0 && sg != prev_sign) {
            ns.nodes.push_back(refine_root(p, prev_x, x));
        }
        prev_sign = sg;
        prev_x = x;
    }
    if (static_cast<int>(ns.nodes.size()) != s)
        throw std::runtime_error("gauss_nodes: root isolation found " + std::to_string(ns.nodes.size()) + " roots");
    return ns;
}

RepeatedQuadrature<HighPrec> gauss_repeated_weights(const NodeSet<HighPrec>& node_set, int S) {
    if (is_newton_cotes(node_set.kind)) throw WrongKind("gauss_repeated_weights called with " + to_string(node_set.kind));
    if (S < 1) throw std::invalid_argument("repetition depth must be >= 1");
    use_working_precision();
    RepeatedQuadrature<HighPrec> q;
    q.node_set = node_set;
    q.depth = S;
    const auto b = interpolatory_weights(node_set.nodes);
    const auto n = static_cast<Eigen::Index>(b.size());
    q.weights = Matrix<HighPrec>::Zero(S, n);
    q.unit = Matrix<HighPrec>::Zero(S, n);
    for (int k = 1; k <= S; ++k) {
        HighPrec two_k = ipow(HighPrec(2), k);
        HighPrec kfact(factorial(k));
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            HighPrec w = 2 * b[ju];
            HighPrec x = 2 * node_set.nodes[ju] - 1;
            q.weights(k - 1, j) = HighPrec(k) * w * ipow(HighPrec(1 - x), k - 1) / two_k;
            q.unit(k - 1, j) = q.weights(k - 1, j) / kfact;
        }
    }
    return q;
}

}  // namespace irk
