#pragma once

#include "irk/metrics.hpp"
#include "irk/problems.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irk {

struct ExperimentSpec {
    std::string id;  ///< exp1, exp2a, exp2b, exp3, exp4a, exp4b, exp5
    std::vector<std::string> methods;
    std::vector<int> N_values;
    std::vector<std::string> sweep_methods;  ///< exp4a stiffness sweep
    std::string output_dir = "results";
    bool lambda_sweep_only = false;  ///< exp4a: run only the stiffness sweep
};

/// Accepts "1", "2a", "exp2a", ...; throws UnknownId.
std::string normalize_experiment_id(std::string_view id);
ExperimentSpec default_spec(std::string_view id);

struct ErrorRow {
    std::string method;
    std::string series;  ///< empty, or a parameter label such as "mu=1000"
    int N = 0;
    double h = 0.0;
    bool ok = true;
    std::string failure;
    ErrorReport errors;
    /// Per-experiment quantities: e_mid, e_x, EOC_r, EOC_r2, EOC_mid.
    std::map<std::string, double> extra;
};

struct SweepPoint {
    std::string method;
    double lambda = 0.0;
    int N1 = 0;
    int N2 = 0;
    double e1 = 0.0;  ///< e_r2 at N1
    double e2 = 0.0;  ///< e_r2 at N2
    std::optional<double> eoc;
    bool ok = true;
    std::string failure;
};

struct CheckResult {
    std::string table;
    std::string method;
    std::string column;  ///< N, mu or quantity label
    std::string quantity;
    double printed = 0.0;
    double reproduced = 0.0;
    std::string status;  ///< pass, fail or floor
    std::string rule;
};

struct ExperimentResult {
    ExperimentSpec spec;
    std::vector<ErrorRow> rows;
    std::vector<SweepPoint> sweep;
    std::vector<CheckResult> checks;
    /// File name -> content, ready to write.
    std::map<std::string, std::string> files;
    bool numerical_failure = false;

    bool checks_failed() const;
    const ErrorRow* find(std::string_view method, int N, std::string_view series = "") const;
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Writes every file plus `<id>_manifest.json`; returns the paths written.
std::vector<std::filesystem::path> write_experiment(const ExperimentResult& r, const std::filesystem::path& dir);
std::string experiment_manifest(const ExperimentResult& r);

/// Reference values for Tables 5-7, embedded at build time.
const std::string& reference_tables_json();

/// CSV with header x,y_1..y_d[,exact_1..exact_d], 17 significant digits.
std::string solution_csv(const SolveResult& r, const IVProblem& prob, bool with_exact = true);

/// Step-count pair for the exp4a stiffness sweep.
inline constexpr int kSweepN1 = 32;
inline constexpr int kSweepN2 = 64;
const std::vector<double>& lambda_sweep_values();

}  // namespace irk
