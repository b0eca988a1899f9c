#pragma once

#include "irk/exact.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irk {

enum class Mode { exact, floating };
enum class Provenance { derived, catalog };

/// (c, A, b). Exact tableaux carry Rational entries alongside their
/// double images; floating tableaux carry doubles only.
struct ButcherTableau {
    std::string name;
    int s = 0;
    Mode mode = Mode::exact;
    Provenance provenance = Provenance::derived;
    RatMatrix A_exact;
    RatVector b_exact;
    RatVector c_exact;
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    int precision_digits = 17;  ///< construction precision of floating entries
    std::vector<std::string> notes;

    bool is_exact() const { return mode == Mode::exact; }
};

ButcherTableau make_exact_tableau(std::string name, RatMatrix A, RatVector b, RatVector c,
                                  Provenance provenance = Provenance::derived);
ButcherTableau make_float_tableau(std::string name, Eigen::MatrixXd A, Eigen::VectorXd b, Eigen::VectorXd c,
                                  Provenance provenance = Provenance::derived, int precision_digits = 17);

/// Throws std::invalid_argument on inconsistent dimensions.
void validate(const ButcherTableau& T);

/// Tolerance for zero and equality tests on floating tableaux.
inline constexpr double kFloatTol = 1e-12;

struct StructureFlags {
    bool explicit_method = false;
    bool explicit_first_line = false;
    bool dirk = false;
    bool sdirk = false;
    bool stiffly_accurate = false;
    bool fully_implicit = false;

    bool operator==(const StructureFlags&) const = default;
};

StructureFlags classify(const ButcherTableau& T);

/// Rows i with sum_j a_ij != c_i (0-based).
std::vector<int> row_sum_defects(const ButcherTableau& T);

/// Largest entrywise difference, computed on the double images.
double max_abs_difference(const ButcherTableau& X, const ButcherTableau& Y);
/// Exact structural equality of two exact tableaux (names ignored).
bool same_exact_entries(const ButcherTableau& X, const ButcherTableau& Y);

std::string tableau_to_json(const ButcherTableau& T, int indent = 2);
/// Parses the interchange format; throws ParseError.
ButcherTableau tableau_from_json(std::string_view text);
/// Plain-text rendering of the tableau.
std::string render_table(const ButcherTableau& T);

// Catalog of printed tableaux.

struct UnknownName : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CatalogEntry {
    std::string name;
    ButcherTableau printed;  ///< verbatim transcription
    ButcherTableau tableau;  ///< corrected values used everywhere else
    std::optional<int> order;
    std::optional<std::array<int, 3>> pqr;
    /// Published R(z) as (numerator, denominator), denominator(0) = 1.
    std::optional<std::array<RatPoly, 2>> printed_R;
    std::string discrepancy;  ///< empty when printed == corrected
    /// Tolerance for comparing printed entries against the derivation
    /// (0 means exact equality).
    double match_tol = 0.0;
};

const std::vector<std::string>& catalog_names();
/// Resolves aliases such as "Lobatto4" or "nIRK-L4".
std::string canonical_name(std::string_view name);
const CatalogEntry& catalog_entry(std::string_view name);
ButcherTableau catalog(std::string_view name);

}  // namespace irk
