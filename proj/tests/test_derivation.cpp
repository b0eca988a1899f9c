#include <doctest.h>

#include "irk/analysis.hpp"
#include "irk/derivation.hpp"

#include <cmath>

using namespace irk;

namespace {

Rational q(const char* s) { return parse_rational(s); }

Rational rpow(const Rational& x, int k) {
    Rational r = 1;
    for (int e = 0; e < k; ++e) r *= x;
    return r;
}

void check_row(const ButcherTableau& T, int i, std::initializer_list<const char*> row) {
    int j = 0;
    for (const char* v : row) {
        CAPTURE(i);
        CAPTURE(j);
        CHECK(T.A_exact(i, j) == q(v));
        ++j;
    }
}

std::vector<Rational> grid(std::initializer_list<const char*> taus) {
    std::vector<Rational> out;
    for (const char* t : taus) out.push_back(q(t));
    return out;
}

}  // namespace

TEST_CASE("closed Newton-Cotes derivations") {
    const auto T2 = derive_closed_nc(2);
    check_row(T2, 0, {"0", "0"});
    check_row(T2, 1, {"1/2", "1/2"});
    CHECK(T2.b_exact(0) == q("1/2"));

    const auto T3 = derive_closed_nc(3);
    check_row(T3, 1, {"5/24", "1/3", "-1/24"});
    check_row(T3, 2, {"1/6", "2/3", "1/6"});

    const auto T4 = derive_closed_nc(4);
    check_row(T4, 0, {"0", "0", "0", "0"});
    check_row(T4, 1, {"47/360", "89/360", "-19/360", "1/120"});
    check_row(T4, 2, {"7/60", "77/180", "23/180", "-1/180"});
    check_row(T4, 3, {"1/8", "3/8", "3/8", "1/8"});
    for (int j = 0; j < 4; ++j) CHECK(T4.b_exact(j) == T4.A_exact(3, j));

    CHECK_THROWS_AS(derive_closed_nc(1), Unsupported);
    CHECK_THROWS_AS(derive_closed_nc(7), Unsupported);
}

TEST_CASE("nIRK4 satisfies B(4) and C(3) but not C(4)") {
    // Independent of the moment derivation: the simplifying conditions
    // evaluated directly on the entries.
    const auto T = derive_closed_nc(4);
    for (int k = 1; k <= 4; ++k) {
        Rational bsum = 0;
        for (int j = 0; j < 4; ++j) bsum += T.b_exact(j) * rpow(T.c_exact(j), k - 1);
        CHECK(bsum == Rational(1, k));
    }
    auto Ck = [&](int k) {
        for (int i = 0; i < 4; ++i) {
            Rational acc = 0;
            for (int j = 0; j < 4; ++j) acc += T.A_exact(i, j) * rpow(T.c_exact(j), k - 1);
            if (acc != rpow(T.c_exact(i), k) / k) return false;
        }
        return true;
    };
    CHECK(Ck(1));
    CHECK(Ck(2));
    CHECK(Ck(3));
    CHECK_FALSE(Ck(4));
}

TEST_CASE("closed Newton-Cotes, Cauchy variant") {
    const auto T = derive_closed_nc(4, true);
    // The printed row 2 (1/24, 5/24, -1/4, 1/24) misses the row sum c_2 = 1/3;
    // the derivation gives the row that also reproduces the printed R(z).
    check_row(T, 1, {"5/24", "1/8", "-1/24", "1/24"});
    check_row(T, 2, {"1/12", "5/12", "1/4", "-1/12"});
    CHECK(q("1/24") + q("5/24") - q("1/4") + q("1/24") != q("1/3"));
}

TEST_CASE("open Newton-Cotes derivations") {
    const auto T = derive_open_nc(3);
    check_row(T, 0, {"101/240", "-13/60", "11/240"});
    CHECK(T.b_exact(0) == q("2/3"));
    CHECK(T.b_exact(1) == q("-1/3"));
    CHECK(T.b_exact(2) == q("2/3"));
    const auto C = derive_open_nc(3, true);
    check_row(C, 1, {"0", "-1/6", "2/3"});
    CHECK_THROWS_AS(derive_open_nc(6), Unsupported);
}

TEST_CASE("open Newton-Cotes s = 4 against the printed roundings") {
    const auto T = derive_open_nc(4);
    check_row(T, 0, {"719/1680", "-673/1680", "73/336", "-5/112"});
    CHECK(std::abs(T.A(0, 0) - 1340.0 / 3131) < 2e-3);
    CHECK(std::abs(T.A(3, 1) - (-2442.0 / 13907)) < 2e-3);
}

TEST_CASE("Gauss-type derivations") {
    const double r3 = std::sqrt(3.0);
    const auto G2 = derive_gauss(NodeKind::gauss_legendre, 2);
    CHECK(std::abs(G2.A(0, 0) - 0.25) < 1e-12);
    CHECK(std::abs(G2.A(0, 1) - (0.25 - r3 / 6)) < 1e-12);
    CHECK(std::abs(G2.A(1, 0) - (0.25 + r3 / 6)) < 1e-12);
    CHECK(std::abs(G2.b(0) - 0.5) < 1e-12);

    const auto R2 = derive_gauss(NodeKind::radau_right, 2);
    CHECK(std::abs(R2.A(0, 0) - 5.0 / 12) < 1e-12);
    CHECK(std::abs(R2.A(0, 1) + 1.0 / 12) < 1e-12);
    CHECK(std::abs(R2.A(1, 0) - 0.75) < 1e-12);
    CHECK(std::abs(R2.A(1, 1) - 0.25) < 1e-12);

    const auto L4 = derive_gauss(NodeKind::lobatto, 4);
    CHECK(std::abs(L4.A(1, 0) - (11 + std::sqrt(5.0)) / 120) < 1e-12);
    CHECK_THROWS_AS(derive_gauss(NodeKind::closed_nc, 3), WrongKind);
}

TEST_CASE("closed Newton-Cotes derivation matches collocation for s <= 3 only") {
    // Same nodes, different construction: equal for s = 2, 3 (Lobatto IIIA),
    // different for s = 4 where nIRK4 has stage order 3.
    CHECK(same_exact_entries(derive_closed_nc(2), derive_collocation(grid({"0", "1"}))));
    CHECK(same_exact_entries(derive_closed_nc(3), derive_collocation(grid({"0", "1/2", "1"}))));
    CHECK_FALSE(same_exact_entries(derive_closed_nc(4), derive_collocation(grid({"0", "1/3", "2/3", "1"}))));
}

TEST_CASE("collocation derivations") {
    const auto T5 = derive_collocation(grid({"0", "1/4", "1/2", "3/4", "1"}));
    CHECK(T5.name == "sIRK5");
    CHECK(T5.b_exact(0) == q("7/90"));
    const auto T4 = derive_collocation(grid({"0", "1/3", "2/3", "1"}));
    CHECK(T4.b_exact(0) == q("1/8"));
    const auto T4o = derive_collocation(grid({"1/5", "2/5", "3/5", "4/5"}));
    CHECK(T4o.A_exact(2, 3) == q("-3/40"));
    const auto Tt = derive_collocation(grid({"0", "1"}));
    CHECK(Tt.A_exact(1, 0) == q("1/2"));
    CHECK(Tt.A_exact(1, 1) == q("1/2"));
    CHECK_THROWS_AS(derive_collocation(grid({"0", "1/2", "1/2"})), DuplicateNodes);
}

TEST_CASE("collocation satisfies C(s) by construction") {
    const auto T = derive_collocation(grid({"1/4", "1/2", "3/4"}));
    CHECK(condition_C(T, 3));
    CHECK(condition_B(T, 3));
}

TEST_CASE("moment system requires depth S + 1") {
    const auto rule = modified_nc_weights(NodeKind::closed_nc, 4, 2);
    CHECK_THROWS_AS(assemble_moment_system(rule, true, true), DepthMismatch);
    const auto ok = modified_nc_weights(NodeKind::closed_nc, 4, 3);
    const auto sys = assemble_moment_system(ok, true, true);
    CHECK(sys.unknowns == std::vector<int>{1, 2});
    const RatMatrix A = solve_moment_system(sys);
    CHECK(A(1, 0) == q("47/360"));
}

TEST_CASE("derived tableaux record their provenance") {
    const auto T = derive_closed_nc(4);
    CHECK(T.provenance == Provenance::derived);
    CHECK(T.is_exact());
    CHECK(derive_gauss(NodeKind::gauss_legendre, 3).mode == Mode::floating);
}
