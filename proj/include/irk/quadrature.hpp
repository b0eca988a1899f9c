#pragma once

#include "irk/exact.hpp"

#include <string>
#include <vector>

namespace irk {

enum class NodeKind { closed_nc, open_nc, gauss_legendre, radau_left, radau_right, lobatto };

std::string to_string(NodeKind kind);
bool is_newton_cotes(NodeKind kind);

struct DuplicateNodes : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidNodeCount : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct Unsupported : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct WrongKind : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Quadrature nodes on [0,1], strictly increasing.
template <class T>
struct NodeSet {
    NodeKind kind;
    std::vector<T> nodes;
};

/// Weights for repeated integrals of depth 1..depth.
///
/// `weights` follows the published normalisation: for Newton-Cotes kinds
/// g^(-k) ~ H^k sum_j W(k,j) g(T_j), for Gauss kinds
/// g^(-k) ~ (b-a)^k/k! sum_j w(k,j) g(t_j) with w from the [-1,1] rule.
/// `unit` holds the plain coefficients on [0,1]:
/// g^(-k) over [0,1] ~ sum_j unit(k-1,j) g(tau_j).
template <class T>
struct RepeatedQuadrature {
    NodeSet<T> node_set;
    int depth = 0;
    T spacing = T(1);  ///< H for Newton-Cotes kinds, 1 otherwise
    Matrix<T> weights;
    Matrix<T> unit;
};

template <class T>
std::vector<Poly<T>> lagrange_basis(const std::vector<T>& nodes);

/// S-fold repeated integral over [lo,hi] via Cauchy's single-integral form.
template <class T>
T repeated_integral_poly(const Poly<T>& p, int S, const T& lo, const T& hi);

/// Newton-Cotes nodes on [0,1] using the node-count parameter m of the
/// repeated-integral rules: closed uses m nodes j/(m-1), j = 0..m-1;
/// open uses the m-2 interior nodes j/(m-1), j = 1..m-2.
NodeSet<Rational> newton_cotes_nodes(NodeKind kind, int m);

/// Same node sets addressed by stage count: closed s nodes (m = s),
/// open s nodes on s+1 subintervals (m = s + 2).
NodeSet<Rational> newton_cotes_stage_nodes(NodeKind kind, int s);
int nc_parameter_for_stages(NodeKind kind, int s);

/// Kernel integrated exactly against each Lagrange basis polynomial.
RepeatedQuadrature<Rational> modified_nc_weights(NodeKind kind, int m, int S);

/// Depth-1 rule applied to the kernel-weighted integrand; the kernel
/// (1-t)^(k-1)/(k-1)! is sampled at the nodes.
RepeatedQuadrature<Rational> cauchy_variant_weights(NodeKind kind, int m, int S);

/// Working precision for Gauss constructions, in decimal digits. Reads
/// IRK_PRECISION_DIGITS once (default 30).
int precision_digits();
void set_precision_digits(int digits);

/// Shifted Legendre polynomial P*_n on [0,1], integer coefficients.
RatPoly shifted_legendre(int n);
/// The polynomial whose roots are the nodes of the given Gauss kind.
RatPoly gauss_node_polynomial(NodeKind kind, int s);

NodeSet<HighPrec> gauss_nodes(NodeKind kind, int s);

/// Interpolatory weights on [0,1]: integrals of the Lagrange basis.
template <class T>
std::vector<T> interpolatory_weights(const std::vector<T>& nodes);

RepeatedQuadrature<HighPrec> gauss_repeated_weights(const NodeSet<HighPrec>& node_set, int S);

}  // namespace irk
