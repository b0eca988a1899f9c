#include "irk/tableau.hpp"

#include "json.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace irk {

namespace {

using nlohmann::json;

Eigen::MatrixXd to_double_matrix(const RatMatrix& M) {
    Eigen::MatrixXd D(M.rows(), M.cols());
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) D(i, j) = to_double(M(i, j));
    return D;
}

Eigen::VectorXd to_double_vector(const RatVector& v) {
    Eigen::VectorXd D(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) D(i) = to_double(v(i));
    return D;
}

// Entry predicates that respect the tableau mode.
struct EntryView {
    const ButcherTableau& T;
    bool a_zero(Eigen::Index i, Eigen::Index j) const {
        return T.is_exact() ? T.A_exact(i, j) == 0 : std::abs(T.A(i, j)) <= kFloatTol;
    }
    bool a_eq(Eigen::Index i, Eigen::Index j, Eigen::Index k, Eigen::Index l) const {
        return T.is_exact() ? T.A_exact(i, j) == T.A_exact(k, l) : std::abs(T.A(i, j) - T.A(k, l)) <= kFloatTol;
    }
    bool a_eq_b(Eigen::Index i, Eigen::Index j) const {
        return T.is_exact() ? T.A_exact(i, j) == T.b_exact(j) : std::abs(T.A(i, j) - T.b(j)) <= kFloatTol;
    }
};

std::string float_cell(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

json entry_json(const ButcherTableau& T, const Rational* q, double d) {
    if (T.is_exact()) return to_string(*q);
    return d;
}

Rational read_exact(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw ParseError("exact tableau entries must be \"p/q\" strings");
}

double read_float(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
    throw ParseError("tableau entries must be numbers or strings");
}

}  // namespace

ButcherTableau make_exact_tableau(std::string name, RatMatrix A, RatVector b, RatVector c, Provenance provenance) {
    ButcherTableau T;
    T.name = std::move(name);
    T.s = static_cast<int>(b.size());
    T.mode = Mode::exact;
    T.provenance = provenance;
    T.A = to_double_matrix(A);
    T.b = to_double_vector(b);
    T.c = to_double_vector(c);
    T.A_exact = std::move(A);
    T.b_exact = std::move(b);
    T.c_exact = std::move(c);
    validate(T);
    return T;
}

ButcherTableau make_float_tableau(std::string name, Eigen::MatrixXd A, Eigen::VectorXd b, Eigen::VectorXd c,
                                  Provenance provenance, int precision_digits) {
    ButcherTableau T;
    T.name = std::move(name);
    T.s = static_cast<int>(b.size());
    T.mode = Mode::floating;
    T.provenance = provenance;
    T.A = std::move(A);
    T.b = std::move(b);
    T.c = std::move(c);
    T.precision_digits = precision_digits;
    validate(T);
    return T;
}

void validate(const ButcherTableau& T) {
    const Eigen::Index s = T.s;
    if (s < 1) throw std::invalid_argument("tableau needs at least one stage");
    if (T.A.rows() != s || T.A.cols() != s || T.b.size() != s || T.c.size() != s)
        throw std::invalid_argument("tableau dimensions inconsistent");
    if (T.is_exact() && (T.A_exact.rows() != s || T.A_exact.cols() != s || T.b_exact.size() != s || T.c_exact.size() != s))
        throw std::invalid_argument("exact tableau dimensions inconsistent");
}

StructureFlags classify(const ButcherTableau& T) {
    const EntryView v{T};
    const Eigen::Index s = T.s;
    StructureFlags f;
    f.explicit_method = f.dirk = f.explicit_first_line = f.stiffly_accurate = true;
    for (Eigen::Index i = 0; i < s; ++i) {
        for (Eigen::Index j = 0; j < s; ++j) {
            if (v.a_zero(i, j)) continue;
            if (j >= i) f.explicit_method = false;
            if (j > i) f.dirk = false;
            if (i == 0) f.explicit_first_line = false;
        }
        if (!v.a_eq_b(s - 1, i)) f.stiffly_accurate = false;
    }
    f.sdirk = f.dirk && !v.a_zero(0, 0);
    for (Eigen::Index i = 1; i < s && f.sdirk; ++i)
        if (!v.a_eq(i, i, 0, 0)) f.sdirk = false;
    f.fully_implicit = !f.dirk;
    return f;
}

std::vector<int> row_sum_defects(const ButcherTableau& T) {
    std::vector<int> rows;
    for (Eigen::Index i = 0; i < T.s; ++i) {
        bool ok = T.is_exact() ? T.A_exact.row(i).sum() == T.c_exact(i)
                               : std::abs(T.A.row(i).sum() - T.c(i)) <= kFloatTol;
        if (!ok) rows.push_back(static_cast<int>(i));
    }
    return rows;
}

double max_abs_difference(const ButcherTableau& X, const ButcherTableau& Y) {
    if (X.s != Y.s) return INFINITY;
    double d = (X.A - Y.A).cwiseAbs().maxCoeff();
    d = std::max(d, (X.b - Y.b).cwiseAbs().maxCoeff());
    return std::max(d, (X.c - Y.c).cwiseAbs().maxCoeff());
}

bool same_exact_entries(const ButcherTableau& X, const ButcherTableau& Y) {
    return X.is_exact() && Y.is_exact() && X.s == Y.s && X.A_exact == Y.A_exact && X.b_exact == Y.b_exact &&
           X.c_exact == Y.c_exact;
}

std::string tableau_to_json(const ButcherTableau& T, int indent) {
    json j;
    j["name"] = T.name;
    j["s"] = T.s;
    j["mode"] = T.is_exact() ? "exact" : "float";
    json c = json::array(), b = json::array(), A = json::array();
    for (Eigen::Index i = 0; i < T.s; ++i) {
        c.push_back(entry_json(T, T.is_exact() ? &T.c_exact(i) : nullptr, T.c(i)));
        b.push_back(entry_json(T, T.is_exact() ? &T.b_exact(i) : nullptr, T.b(i)));
        json row = json::array();
        for (Eigen::Index k = 0; k < T.s; ++k)
            row.push_back(entry_json(T, T.is_exact() ? &T.A_exact(i, k) : nullptr, T.A(i, k)));
        A.push_back(row);
    }
    j["c"] = c;
    j["A"] = A;
    j["b"] = b;
    return j.dump(indent);
}

ButcherTableau tableau_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("tableau JSON: ") + e.what());
    }
    try {
        const std::string name = j.value("name", std::string("unnamed"));
        const std::string mode = j.value("mode", std::string("float"));
        const auto& c = j.at("c");
        const auto& b = j.at("b");
        const auto& A = j.at("A");
        const auto s = static_cast<Eigen::Index>(b.size());
        if (j.contains("s") && j.at("s").get<Eigen::Index>() != s) throw ParseError("field s disagrees with b");
        if (static_cast<Eigen::Index>(c.size()) != s || static_cast<Eigen::Index>(A.size()) != s)
            throw ParseError("tableau dimensions inconsistent");
        for (const auto& row : A)
            if (static_cast<Eigen::Index>(row.size()) != s) throw ParseError("A is not square");
        if (mode == "exact") {
            RatMatrix Aq(s, s);
            RatVector bq(s), cq(s);
            for (Eigen::Index i = 0; i < s; ++i) {
                bq(i) = read_exact(b[static_cast<std::size_t>(i)]);
                cq(i) = read_exact(c[static_cast<std::size_t>(i)]);
                for (Eigen::Index k = 0; k < s; ++k)
                    Aq(i, k) = read_exact(A[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
            }
            return make_exact_tableau(name, Aq, bq, cq);
        }
        if (mode != "float") throw ParseError("mode must be \"exact\" or \"float\"");
        Eigen::MatrixXd Ad(s, s);
        Eigen::VectorXd bd(s), cd(s);
        for (Eigen::Index i = 0; i < s; ++i) {
            bd(i) = read_float(b[static_cast<std::size_t>(i)]);
            cd(i) = read_float(c[static_cast<std::size_t>(i)]);
            for (Eigen::Index k = 0; k < s; ++k)
                Ad(i, k) = read_float(A[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
        }
        return make_float_tableau(name, Ad, bd, cd);
    } catch (const json::exception& e) {
        throw ParseError(std::string("tableau JSON: ") + e.what());
    }
}

std::string render_table(const ButcherTableau& T) {
    auto cell = [&](const Rational* q, double d) { return T.is_exact() ? to_string(*q) : float_cell(d); };
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index i = 0; i < T.s; ++i) {
        std::vector<std::string> r{cell(T.is_exact() ? &T.c_exact(i) : nullptr, T.c(i))};
        for (Eigen::Index k = 0; k < T.s; ++k) r.push_back(cell(T.is_exact() ? &T.A_exact(i, k) : nullptr, T.A(i, k)));
        rows.push_back(r);
    }
    std::vector<std::string> last{""};
    for (Eigen::Index k = 0; k < T.s; ++k) last.push_back(cell(T.is_exact() ? &T.b_exact(k) : nullptr, T.b(k)));
    rows.push_back(last);
    std::vector<std::size_t> width(static_cast<std::size_t>(T.s) + 1, 0);
    for (const auto& r : rows)
        for (std::size_t k = 0; k < r.size(); ++k) width[k] = std::max(width[k], r[k].size());
    std::ostringstream os;
    os << T.name << " (s=" << T.s << ", " << (T.is_exact() ? "exact" : "float") << ")\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i + 1 == rows.size()) {
            std::size_t total = width[0] + 3;
            for (std::size_t k = 1; k < width.size(); ++k) total += width[k] + 2;
            os << std::string(total, '-') << '\n';
        }
        os << std::setw(static_cast<int>(width[0])) << rows[i][0] << " |";
        for (std::size_t k = 1; k < rows[i].size(); ++k) os << "  " << std::setw(static_cast<int>(width[k])) << rows[i][k];
        os << '\n';
    }
    return os.str();
}

}  // namespace irk
