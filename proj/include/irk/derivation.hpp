#pragma once

#include "irk/quadrature.hpp"
#include "irk/tableau.hpp"

#include <vector>

namespace irk {

struct DepthMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a solved stage value does not have y_n-coefficient 1.
struct InconsistentSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Moment identities in the scaled variable tau = (x - x_n)/h. Equation k
/// (k = 1..S), after division by h^k and substitution of the known stage
/// values, reads
///   sum_{i unknown} lhs(k,i) y_i = rhs_yn(k) y_n + h sum_j rhs_K(k,j) K_j.
template <class T>
struct MomentSystem {
    std::vector<int> unknowns;  ///< 0-based stage indices
    Matrix<T> lhs;
    Vector<T> rhs_yn;
    Matrix<T> rhs_K;
    Vector<T> b;
    bool known_first = false;
    bool known_last = false;
};

/// Uses rows 1..S of the rule on the y side and rows 2..S+1 on the f side,
/// so the rule depth must equal S + 1.
template <class T>
MomentSystem<T> assemble_moment_system(const RepeatedQuadrature<T>& weights, bool known_first, bool known_last);

/// Solves the system and returns the full s x s matrix A.
template <class T>
Matrix<T> solve_moment_system(const MomentSystem<T>& sys);

ButcherTableau derive_closed_nc(int s, bool cauchy = false);
ButcherTableau derive_open_nc(int s, bool cauchy = false);
ButcherTableau derive_gauss(NodeKind kind, int s);
ButcherTableau derive_collocation(const std::vector<Rational>& taus);

}  // namespace irk
