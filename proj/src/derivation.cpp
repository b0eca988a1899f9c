#include "irk/derivation.hpp"

#include <sstream>

namespace irk {

namespace {

template <class T>
bool is_one(const T& v) {
    if constexpr (is_exact_v<T>) {
        return v == 1;
    } else {
        return abs(v - 1) < pow(HighPrec(10), -(precision_digits() - 5));
    }
}

RatVector to_vec(const std::vector<Rational>& v) {
    RatVector r(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) r(static_cast<Eigen::Index>(i)) = v[i];
    return r;
}

std::string nc_name(int s, bool open, bool cauchy) {
    return "nIRK" + std::to_string(s) + (open ? "o" : "") + (cauchy ? "c" : "");
}

void flag_row_sums(ButcherTableau& T) {
    for (int i : row_sum_defects(T))
        T.notes.push_back("row-sum condition violated in row " + std::to_string(i + 1));
}

template <class T>
Matrix<T> derive_matrix(const RepeatedQuadrature<T>& q, bool known_first, bool known_last) {
    return solve_moment_system(assemble_moment_system(q, known_first, known_last));
}

}  // namespace

template <class T>
MomentSystem<T> assemble_moment_system(const RepeatedQuadrature<T>& weights, bool known_first, bool known_last) {
    const auto& W = weights.unit;
    const auto s = static_cast<int>(W.cols());
    MomentSystem<T> sys;
    sys.known_first = known_first;
    sys.known_last = known_last;
    for (int i = 0; i < s; ++i)
        if (!((i == 0 && known_first) || (i == s - 1 && known_last))) sys.unknowns.push_back(i);
    const auto S = static_cast<Eigen::Index>(sys.unknowns.size());
    if (weights.depth != S + 1)
        throw DepthMismatch("rule depth " + std::to_string(weights.depth) + " but " + std::to_string(S) +
                            " unknown stages need depth " + std::to_string(S + 1));
    sys.b = W.row(0).transpose();
    sys.lhs = Matrix<T>::Zero(S, S);
    sys.rhs_yn = Vector<T>::Zero(S);
    sys.rhs_K = Matrix<T>::Zero(S, s);
    T kfact(1);
    for (Eigen::Index k = 0; k < S; ++k) {
        kfact *= T(static_cast<long>(k + 1));
        for (Eigen::Index u = 0; u < S; ++u) sys.lhs(k, u) = W(k, sys.unknowns[static_cast<std::size_t>(u)]);
        T yn = T(1) / kfact;
        if (known_first) yn -= W(k, 0);
        if (known_last) yn -= W(k, s - 1);
        sys.rhs_yn(k) = yn;
        for (Eigen::Index j = 0; j < s; ++j) {
            T v = W(k + 1, j);
            if (known_last) v -= W(k, s - 1) * sys.b(j);
            sys.rhs_K(k, j) = v;
        }
    }
    return sys;
}

template <class T>
Matrix<T> solve_moment_system(const MomentSystem<T>& sys) {
    const auto s = sys.b.size();
    Matrix<T> A = Matrix<T>::Zero(s, s);
    if (sys.known_last) A.row(s - 1) = sys.b.transpose();
    if (sys.unknowns.empty()) return A;
    Matrix<T> rhs(sys.rhs_K.rows(), s + 1);
    rhs.col(0) = sys.rhs_yn;
    rhs.rightCols(s) = sys.rhs_K;
    Matrix<T> X = solve_linear<T>(sys.lhs, rhs);
    for (std::size_t u = 0; u < sys.unknowns.size(); ++u) {
        const auto row = static_cast<Eigen::Index>(u);
        if (!is_one(X(row, 0)))
            throw InconsistentSystem("stage " + std::to_string(sys.unknowns[u] + 1) + " has y_n coefficient != 1");
        A.row(sys.unknowns[u]) = X.row(row).rightCols(s);
    }
    return A;
}

template MomentSystem<Rational> assemble_moment_system<Rational>(const RepeatedQuadrature<Rational>&, bool, bool);
template MomentSystem<HighPrec> assemble_moment_system<HighPrec>(const RepeatedQuadrature<HighPrec>&, bool, bool);
template Matrix<Rational> solve_moment_system<Rational>(const MomentSystem<Rational>&);
template Matrix<HighPrec> solve_moment_system<HighPrec>(const MomentSystem<HighPrec>&);

ButcherTableau derive_closed_nc(int s, bool cauchy) {
    if (s < 2 || s > 6) throw Unsupported("closed Newton-Cotes derivation supports 2 <= s <= 6");
    const int m = nc_parameter_for_stages(NodeKind::closed_nc, s);
    const int depth = s - 1;  // s - 2 unknowns
    auto q = cauchy ? cauchy_variant_weights(NodeKind::closed_nc, m, depth) : modified_nc_weights(NodeKind::closed_nc, m, depth);
    RatMatrix A = derive_matrix(q, true, true);
    auto T = make_exact_tableau(nc_name(s, false, cauchy), A, q.unit.row(0).transpose(), to_vec(q.node_set.nodes));
    flag_row_sums(T);
    return T;
}

ButcherTableau derive_open_nc(int s, bool cauchy) {
    if (s < 2 || s > 5) throw Unsupported("open Newton-Cotes derivation supports 2 <= s <= 5");
    const int m = nc_parameter_for_stages(NodeKind::open_nc, s);
    const int depth = s + 1;
    auto q = cauchy ? cauchy_variant_weights(NodeKind::open_nc, m, depth) : modified_nc_weights(NodeKind::open_nc, m, depth);
    RatMatrix A = derive_matrix(q, false, false);
    auto T = make_exact_tableau(nc_name(s, true, cauchy), A, q.unit.row(0).transpose(), to_vec(q.node_set.nodes));
    flag_row_sums(T);
    return T;
}

ButcherTableau derive_gauss(NodeKind kind, int s) {
    const int smin = kind == NodeKind::lobatto ? 2 : 1;
    if (is_newton_cotes(kind)) throw WrongKind("derive_gauss needs a Gauss kind");
    if (s < smin || s > 5) throw Unsupported("Gauss-type derivation supports s <= 5");
    const bool first = kind == NodeKind::radau_left || kind == NodeKind::lobatto;
    const bool last = kind == NodeKind::radau_right || kind == NodeKind::lobatto;
    const int unknowns = s - (first ? 1 : 0) - (last ? 1 : 0);
    auto ns = gauss_nodes(kind, s);
    auto q = gauss_repeated_weights(ns, unknowns + 1);
    Matrix<HighPrec> A = derive_matrix(q, first, last);
    Eigen::MatrixXd Ad(s, s);
    Eigen::VectorXd bd(s), cd(s);
    for (Eigen::Index i = 0; i < s; ++i) {
        bd(i) = q.unit(0, i).convert_to<double>();
        cd(i) = ns.nodes[static_cast<std::size_t>(i)].convert_to<double>();
        for (Eigen::Index j = 0; j < s; ++j) Ad(i, j) = A(i, j).convert_to<double>();
    }
    std::string suffix;
    switch (kind) {
        case NodeKind::gauss_legendre: suffix = "G"; break;
        case NodeKind::radau_left: suffix = "RI"; break;
        case NodeKind::radau_right: suffix = "RII"; break;
        default: suffix = "L"; break;
    }
    auto T = make_float_tableau("nIRK-" + suffix + std::to_string(s), Ad, bd, cd, Provenance::derived, precision_digits());
    flag_row_sums(T);
    return T;
}

ButcherTableau derive_collocation(const std::vector<Rational>& taus) {
    if (taus.empty()) throw std::invalid_argument("collocation needs at least one node");
    for (std::size_t i = 1; i < taus.size(); ++i)
        if (!(taus[i - 1] < taus[i])) {
            if (taus[i - 1] == taus[i]) throw DuplicateNodes("duplicate collocation nodes");
            throw std::invalid_argument("collocation nodes must be increasing");
        }
    if (taus.front() < 0 || taus.back() > 1) throw std::invalid_argument("collocation nodes must lie in [0,1]");
    const auto s = static_cast<Eigen::Index>(taus.size());
    const auto basis = lagrange_basis(taus);
    RatMatrix A(s, s);
    RatVector b(s);
    for (Eigen::Index j = 0; j < s; ++j) {
        const auto& l = basis[static_cast<std::size_t>(j)];
        b(j) = integrate_poly(l, Rational(0), Rational(1));
        for (Eigen::Index i = 0; i < s; ++i) A(i, j) = integrate_poly(l, Rational(0), taus[static_cast<std::size_t>(i)]);
    }
    // Name the grids that the method tables use.
    std::string name = "collocation" + std::to_string(s);
    bool closed = s >= 2, open = true;
    for (Eigen::Index i = 0; i < s; ++i) {
        if (s >= 2 && taus[static_cast<std::size_t>(i)] != Rational(i, s - 1)) closed = false;
        if (taus[static_cast<std::size_t>(i)] != Rational(i + 1, s + 1)) open = false;
    }
    if (closed) name = "sIRK" + std::to_string(s);
    if (open) name = "sIRK" + std::to_string(s) + "o";
    auto T = make_exact_tableau(name, A, b, to_vec(taus));
    flag_row_sums(T);
    return T;
}

}  // namespace irk
