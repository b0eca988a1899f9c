#include "irk/tableau.hpp"

#include <cmath>
#include <map>

namespace irk {

namespace {

using Rows = std::vector<std::vector<std::string>>;
using Strs = std::vector<std::string>;

ButcherTableau exact(const std::string& name, const Strs& c, const Rows& A, const Strs& b) {
    const auto s = static_cast<Eigen::Index>(b.size());
    RatMatrix Aq(s, s);
    RatVector bq(s), cq(s);
    for (Eigen::Index i = 0; i < s; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        bq(i) = parse_rational(b[iu]);
        cq(i) = parse_rational(c[iu]);
        for (Eigen::Index j = 0; j < s; ++j) Aq(i, j) = parse_rational(A[iu][static_cast<std::size_t>(j)]);
    }
    return make_exact_tableau(name, Aq, bq, cq, Provenance::catalog);
}

ButcherTableau floating(const std::string& name, const std::vector<double>& c, const std::vector<std::vector<double>>& A,
                        const std::vector<double>& b) {
    const auto s = static_cast<Eigen::Index>(b.size());
    Eigen::MatrixXd Ad(s, s);
    Eigen::VectorXd bd(s), cd(s);
    for (Eigen::Index i = 0; i < s; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        bd(i) = b[iu];
        cd(i) = c[iu];
        for (Eigen::Index j = 0; j < s; ++j) Ad(i, j) = A[iu][static_cast<std::size_t>(j)];
    }
    return make_float_tableau(name, Ad, bd, cd, Provenance::catalog);
}

std::array<RatPoly, 2> rfun(const Strs& num, const Strs& den) {
    std::vector<Rational> n, d;
    for (const auto& v : num) n.push_back(parse_rational(v));
    for (const auto& v : den) d.push_back(parse_rational(v));
    return {RatPoly(n), RatPoly(d)};
}

CatalogEntry entry(ButcherTableau printed, std::optional<int> order, std::optional<std::array<int, 3>> pqr,
                   double tol = 0.0) {
    CatalogEntry e;
    e.name = printed.name;
    e.tableau = printed;
    e.printed = std::move(printed);
    e.order = order;
    e.pqr = pqr;
    e.match_tol = tol;
    return e;
}

void correct(CatalogEntry& e, int i, int j, const std::string& value) {
    auto& T = e.tableau;
    Rational v = parse_rational(value);
    if (i < 0) {
        T.b_exact(j) = v;
        T.b(j) = to_double(v);
    } else {
        T.A_exact(i, j) = v;
        T.A(i, j) = to_double(v);
    }
}

const Strs closed4{"0", "1/3", "2/3", "1"};
const Strs closed5{"0", "1/4", "1/2", "3/4", "1"};
const Strs open3{"1/4", "1/2", "3/4"};
const Strs open4{"1/5", "2/5", "3/5", "4/5"};
const Strs b_simpson38{"1/8", "3/8", "3/8", "1/8"};
const Strs b_boole{"7/90", "16/45", "2/15", "16/45", "7/90"};
const Strs b_open3{"2/3", "-1/3", "2/3"};
const Strs b_open4{"11/24", "1/24", "1/24", "11/24"};

std::map<std::string, CatalogEntry> build() {
    std::map<std::string, CatalogEntry> m;
    auto add = [&](CatalogEntry e) { m.emplace(e.name, std::move(e)); };

    // Closed Newton-Cotes family.
    {
        auto e = entry(exact("nIRK4", closed4,
                             {{"0", "0", "0", "0"},
                              {"47/360", "89/360", "-19/360", "1/120"},
                              {"7/60", "77/180", "23/180", "-1/180"},
                              b_simpson38},
                             b_simpson38),
                       4, std::array{4, 3, 0});
        e.printed_R = rfun({"1", "1/2", "1/10", "1/120"}, {"1", "-1/2", "1/10", "-1/120"});
        e.discrepancy = "a second printed copy writes a_24 = 3/360 and a_31 = 21/180 (unreduced 1/120, 7/60)";
        add(std::move(e));
    }
    {
        auto e = entry(exact("nIRK4c", closed4,
                             {{"0", "0", "0", "0"},
                              {"1/24", "5/24", "-1/4", "1/24"},
                              {"1/12", "5/12", "1/4", "-1/12"},
                              b_simpson38},
                             b_simpson38),
                       4, std::array{4, 2, 2});
        e.printed_R = rfun({"1", "1/2", "1/9", "1/72"}, {"1", "-1/2", "1/9", "-1/72"});
        correct(e, 1, 0, "5/24");
        correct(e, 1, 1, "1/8");
        correct(e, 1, 2, "-1/24");
        e.discrepancy =
            "printed row 2 (1/24, 5/24, -1/4, 1/24) sums to 1/24 != c_2 = 1/3; corrected to "
            "(5/24, 1/8, -1/24, 1/24), which reproduces the printed R(z) and p q r = 4 2 2";
        add(std::move(e));
    }
    {
        auto e = entry(exact("nIRK5", closed5,
                             {{"0", "0", "0", "0", "0"},
                              {"200/2183", "429/2078", "-109/1680", "191/10080", "-43/20160"},
                              {"29/360", "31/90", "1/15", "1/90", "-1/360"},
                              {"179/2240", "377/1120", "111/560", "167/1120", "-31/2240"},
                              b_boole},
                             b_boole),
                       6, std::array{6, 4, 1}, 2e-3);
        e.printed_R = rfun({"1", "1/2", "3/28", "1/84", "1/1680"}, {"1", "-1/2", "3/28", "-1/84", "1/1680"});
        correct(e, 1, 0, "1847/20160");
        correct(e, 1, 1, "2081/10080");
        e.discrepancy = "printed a_21 = 200/2183 and a_22 = 429/2078 are decimal roundings of 1847/20160 and 2081/10080";
        add(std::move(e));
    }
    {
        auto e = entry(exact("nIRK5c", closed5,
                             {{"0", "0", "0", "0", "0"},
                              {"371/2880", "79/720", "1/480", "19/720", "-49/2880"},
                              {"-7/120", "28/45", "1/15", "-14/15", "49/360"},
                              {"91/960", "79/240", "21/160", "59/240", "-49/960"},
                              b_boole},
                             b_boole),
                       6, std::array{6, 3, 3}, 2e-3);
        e.printed_R = rfun({"1", "1/2", "11/96", "1/64", "7/5760"}, {"1", "-1/2", "11/96", "-1/64", "7/5760"});
        correct(e, 2, 3, "-4/15");
        e.discrepancy =
            "printed a_34 = -14/15 makes row 3 sum to -1/6 != c_3 = 1/2; corrected to -4/15, which reproduces the "
            "printed R(z) and p q r = 6 3 3";
        add(std::move(e));
    }

    // Open Newton-Cotes family.
    add(entry(exact("nIRK3o", open3,
                    {{"101/240", "-13/60", "11/240"}, {"7/12", "-1/6", "1/12"}, {"149/240", "-7/60", "59/240"}}, b_open3),
              4, std::array{4, 2, 1}));
    add(entry(exact("nIRK3oc", open3, {{"3/16", "-1/24", "5/48"}, {"0", "-1/6", "2/3"}, {"9/16", "-7/24", "23/48"}},
                    b_open3),
              4, std::array{4, 1, 3}));
    {
        auto e = entry(exact("nIRK4o", open4,
                             {{"1340/3131", "-538/1343", "73/336", "-6677/149565"},
                              {"1061/1927", "-823/2137", "107/336", "-47/560"},
                              {"571/1053", "-31/112", "239/560", "-31/336"},
                              {"761/1513", "-2442/13907", "743/1680", "902/29713"}},
                             b_open4),
                       4, std::array{4, 3, 0}, 2e-3);
        const Rows exact_rows{{"719/1680", "-673/1680", "73/336", "-5/112"},
                              {"185/336", "-647/1680", "107/336", "-47/560"},
                              {"911/1680", "-31/112", "239/560", "-31/336"},
                              {"169/336", "-59/336", "743/1680", "17/560"}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) correct(e, i, j, exact_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        e.discrepancy = "printed fractions are decimal roundings; corrected entries are the exact rationals";
        add(std::move(e));
    }
    {
        auto e = entry(exact("nIRK4oc", open4,
                             {{"719/1680", "-673/168", "929/4276", "-5/112"},
                              {"185/336", "-647/1680", "485/1523", "-47/560"},
                              {"911/1680", "-31/112", "376/881", "-31/336"},
                              {"169/336", "-59/336", "789/1784", "17/560"}},
                             b_open4),
                       4, std::array{4, 0, 3}, 2e-3);
        const Rows exact_rows{{"0", "-3/440", "-1/165", "-3/40"},
                              {"88/15", "3/8", "4/15", "407/120"},
                              {"-44/15", "-9/40", "-1/3", "-649/120"},
                              {"8/15", "21/440", "8/165", "11/24"}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) correct(e, i, j, exact_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        e.discrepancy =
            "printed entries coincide with nIRK4o up to rounding (a_12 printed -673/168 for -673/1680); the Cauchy "
            "derivation gives a different tableau with p q r = 4 0 4 and rows that violate the row-sum condition; "
            "the derived tableau is used";
        add(std::move(e));
    }

    // Gauss-type family.
    const double r3 = std::sqrt(3.0), r15 = std::sqrt(15.0), r6 = std::sqrt(6.0), r5 = std::sqrt(5.0), r21 = std::sqrt(21.0);
    add(entry(floating("nIRK-G2", {(3 - r3) / 6, (3 + r3) / 6}, {{0.25, 0.25 - r3 / 6}, {0.25 + r3 / 6, 0.25}}, {0.5, 0.5}),
              4, std::array{4, 2, 2}, kFloatTol));
    {
        auto e = entry(floating("nIRK-G3", {(5 - r15) / 10, 0.5, (5 + r15) / 10},
                                {{5.0 / 36, 2.0 / 9 - r15 / 15, 5.0 / 36 - r15 / 30},
                                 {5.0 / 36 + r15 / 24, 2.0 / 9, 5.0 / 36 - r15 / 24},
                                 {5.0 / 36 + r15 / 30, 2.0 / 9 + r15 / 15, 5.0 / 36}},
                                {5.0 / 18, 4.0 / 9, 15.0 / 18}),
                       6, std::array{6, 3, 3}, kFloatTol);
        e.tableau.b(2) = 5.0 / 18;
        e.discrepancy = "printed b_3 = 15/18 breaks sum b = 1; corrected to 5/18";
        add(std::move(e));
    }
    add(entry(exact("nIRK-RI2", {"0", "2/3"}, {{"0", "0"}, {"1/3", "1/3"}}, {"1/4", "3/4"}), 3, std::array{3, 2, 1},
              kFloatTol));
    add(entry(floating("nIRK-RI3", {0.0, (6 - r6) / 10, (6 + r6) / 10},
                       {{0, 0, 0},
                        {(9 + r6) / 75, (24 + r6) / 120, (168 - 73 * r6) / 600},
                        {(9 - r6) / 75, (168 + 73 * r6) / 600, (24 - r6) / 120}},
                       {1.0 / 9, (16 + r6) / 36, (16 - r6) / 36}),
              5, std::array{5, 3, 2}, kFloatTol));
    add(entry(exact("nIRK-RII2", {"1/3", "1"}, {{"5/12", "-1/12"}, {"3/4", "1/4"}}, {"3/4", "1/4"}), 3,
              std::array{3, 2, 1}, kFloatTol));
    add(entry(floating("nIRK-RII3", {(4 - r6) / 10, (4 + r6) / 10, 1.0},
                       {{(88 - 7 * r6) / 360, (296 - 169 * r6) / 1800, (-2 + 3 * r6) / 225},
                        {(296 + 169 * r6) / 1800, (88 + 7 * r6) / 360, (-2 - 3 * r6) / 225},
                        {(16 - r6) / 36, (16 + r6) / 36, 1.0 / 9}},
                       {(16 - r6) / 36, (16 + r6) / 36, 1.0 / 9}),
              5, std::array{5, 3, 2}, kFloatTol));
    add(entry(exact("LobattoIIIA-2", {"0", "1"}, {{"0", "0"}, {"1/2", "1/2"}}, {"1/2", "1/2"}), 2, std::array{2, 2, 0}));
    {
        auto e = entry(exact("LobattoIIIA-3", {"0", "1/2", "1"}, {{"0", "0", "0"}, {"5/24", "1/3", "-1/24"}, {"1/6", "2/3", "1/6"}},
                             {"1/6", "2/3", "1/6"}),
                       4, std::array{4, 3, 1});
        e.discrepancy = "a second printed copy has a_22 = 8/42; the collocation value 1/3 is used";
        add(std::move(e));
    }
    add(entry(floating("LobattoIIIA-4", {0.0, 0.5 - r5 / 10, 0.5 + r5 / 10, 1.0},
                       {{0, 0, 0, 0},
                        {(11 + r5) / 120, (25 - r5) / 120, (25 - 13 * r5) / 120, (-1 + r5) / 120},
                        {(11 - r5) / 120, (25 + 13 * r5) / 120, (25 + r5) / 120, (-1 - r5) / 120},
                        {1.0 / 12, 5.0 / 12, 5.0 / 12, 1.0 / 12}},
                       {1.0 / 12, 5.0 / 12, 5.0 / 12, 1.0 / 12}),
              6, std::array{6, 4, 2}, kFloatTol));
    add(entry(floating("LobattoIIIA-5", {0.0, 0.5 - r21 / 14, 0.5, 0.5 + r21 / 14, 1.0},
                       {{0, 0, 0, 0, 0},
                        {(119 + 3 * r21) / 1960, (343 - 9 * r21) / 2520, (392 - 96 * r21) / 2205, (343 - 69 * r21) / 2520,
                         (-21 + 3 * r21) / 1960},
                        {13.0 / 320, (392 + 105 * r21) / 2880, 8.0 / 45, (392 - 105 * r21) / 2880, 3.0 / 320},
                        {(119 - 3 * r21) / 1960, (343 + 69 * r21) / 2520, (392 + 96 * r21) / 2205, (343 + 9 * r21) / 2520,
                         (-21 - 3 * r21) / 1960},
                        {1.0 / 20, 49.0 / 180, 16.0 / 45, 49.0 / 180, 1.0 / 20}},
                       {1.0 / 20, 49.0 / 180, 16.0 / 45, 49.0 / 180, 1.0 / 20}),
              8, std::array{8, 5, 3}, kFloatTol));

    // Standard collocation family.
    add(entry(exact("sIRK3o", open3, {{"23/48", "-1/3", "5/48"}, {"7/12", "-1/6", "1/12"}, {"9/16", "0", "3/16"}}, b_open3), 4,
              std::array{4, 3, 1}));
    {
        auto e = entry(exact("sIRK4o", open4,
                             {{"11/24", "-59/120", "37/120", "-3/40"},
                              {"8/15", "-1/3", "4/15", "-1/15"},
                              {"21/40", "-9/40", "3/8", "-30/40"},
                              {"8/15", "-4/15", "8/15", "0"}},
                             b_open4),
                       4, std::array{4, 4, 0});
        correct(e, 2, 3, "-3/40");
        e.discrepancy = "printed a_34 = -30/40 breaks the row sum; collocation gives -3/40";
        add(std::move(e));
    }
    {
        auto e = entry(exact("sIRK4", closed4,
                             {{"0", "0", "0", "0"}, {"1/8", "19/72", "-5/72", "1/72"}, {"1/9", "4/9", "1/9", "0"}, b_simpson38},
                             {"11/8", "3/8", "3/8", "1/8"}),
                       4, std::array{4, 4, 0});
        correct(e, -1, 0, "1/8");
        e.discrepancy = "printed b_1 = 11/8 breaks sum b = 1; corrected to 1/8";
        add(std::move(e));
    }
    add(entry(exact("sIRK5", closed5,
                    {{"0", "0", "0", "0", "0"},
                     {"251/2880", "323/1440", "-11/120", "53/1440", "-19/2880"},
                     {"29/360", "31/90", "1/15", "1/90", "-1/360"},
                     {"27/320", "51/160", "9/40", "21/160", "-3/320"},
                     b_boole},
                    b_boole),
              6, std::array{6, 5, 1}));

    // Classical examples.
    add(entry(exact("explicitEuler", {"0"}, {{"0"}}, {"1"}), 1, std::nullopt));
    add(entry(exact("implicitEuler", {"1"}, {{"1"}}, {"1"}), 1, std::nullopt));
    add(entry(exact("Heun", {"0", "1"}, {{"0", "0"}, {"1", "0"}}, {"1/2", "1/2"}), 2, std::nullopt));
    add(entry(exact("trapezoidal", {"0", "1"}, {{"0", "0"}, {"1/2", "1/2"}}, {"1/2", "1/2"}), 2, std::nullopt));
    add(entry(exact("RK4", {"0", "1/2", "1/2", "1"},
                    {{"0", "0", "0", "0"}, {"1/2", "0", "0", "0"}, {"0", "1/2", "0", "0"}, {"0", "0", "1", "0"}},
                    {"1/6", "1/3", "1/3", "1/6"}),
              4, std::nullopt));

    for (auto& [name, e] : m) {
        if (!e.discrepancy.empty()) e.tableau.notes.push_back(e.discrepancy);
        validate(e.tableau);
    }
    return m;
}

const std::map<std::string, CatalogEntry>& table() {
    static const std::map<std::string, CatalogEntry> t = build();
    return t;
}

const std::map<std::string, std::string>& aliases() {
    static const std::map<std::string, std::string> a{
        {"Lobatto2", "LobattoIIIA-2"}, {"Lobatto3", "LobattoIIIA-3"}, {"Lobatto4", "LobattoIIIA-4"},
        {"Lobatto5", "LobattoIIIA-5"}, {"nIRK2", "LobattoIIIA-2"},    {"nIRK2c", "LobattoIIIA-2"},
        {"sIRK2", "LobattoIIIA-2"},    {"nIRK-L2", "LobattoIIIA-2"},  {"nIRK3", "LobattoIIIA-3"},
        {"nIRK3c", "LobattoIIIA-3"},   {"sIRK3", "LobattoIIIA-3"},    {"nIRK-L3", "LobattoIIIA-3"},
        {"nIRK-L4", "LobattoIIIA-4"},  {"nIRK-L5", "LobattoIIIA-5"},
    };
    return a;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names{
        "nIRK4",        "nIRK4c",        "nIRK5",         "nIRK5c",       "nIRK3o",   "nIRK3oc",  "nIRK4o",
        "nIRK4oc",      "nIRK-G2",       "nIRK-G3",       "nIRK-RI2",     "nIRK-RI3", "nIRK-RII2", "nIRK-RII3",
        "LobattoIIIA-2", "LobattoIIIA-3", "LobattoIIIA-4", "LobattoIIIA-5", "sIRK3o",   "sIRK4o",   "sIRK4",
        "sIRK5",        "explicitEuler", "implicitEuler", "Heun",         "trapezoidal", "RK4"};
    return names;
}

std::string canonical_name(std::string_view name) {
    std::string n(name);
    if (auto it = aliases().find(n); it != aliases().end()) return it->second;
    return n;
}

const CatalogEntry& catalog_entry(std::string_view name) {
    const auto it = table().find(canonical_name(name));
    if (it == table().end()) throw UnknownName("unknown tableau: " + std::string(name));
    return it->second;
}

ButcherTableau catalog(std::string_view name) { return catalog_entry(name).tableau; }

}  // namespace irk
