#include "irk/cli.hpp"

#include "irk/analysis.hpp"
#include "irk/derivation.hpp"
#include "irk/experiments.hpp"
#include "irk/metrics.hpp"
#include "irk/problems.hpp"
#include "irk/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace irk {

namespace {

using nlohmann::json;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    if (!is) throw UsageError("cannot read " + p.string());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os) throw UsageError("cannot write " + p.string());
    os << content;
}

/// A catalog name, or a path to a tableau JSON file.
ButcherTableau resolve_tableau(const std::string& ref) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(ref, ec)) return tableau_from_json(read_file(ref));
    return catalog(ref);
}

json poly_json(const RatPoly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(to_string(c));
    return a;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty()) out.push_back(item);
    return out;
}

json analysis_json(const ButcherTableau& T) {
    const OrderReport rep = check_order_conditions(T);
    const SimplifyingTriple tr = simplifying_triple(T);
    const StabilityFunction R = stability_function(T);
    const StabilityVerdict v = is_a_stable(R);
    const StructureFlags f = classify(T);
    json j;
    j["name"] = T.name;
    j["s"] = T.s;
    j["mode"] = T.is_exact() ? "exact" : "float";
    j["classical_order"] = rep.classical_order;
    j["classical_order_at_cap"] = rep.classical_at_cap();
    j["linear_order"] = rep.linear_order;
    j["linear_conditions_satisfied"] = rep.linear_conditions_satisfied;
    j["order"] = method_order(T);
    j["p"] = tr.p;
    j["q"] = tr.q;
    j["r"] = tr.r;
    j["certified_order"] = tr.certified_order ? json(*tr.certified_order) : json(nullptr);
    j["stage_order"] = stage_order(T);
    j["a_stable"] = v.a_stable;
    j["a_stability_reason"] = v.evidence.reason;
    j["R_numerator"] = poly_json(R.numerator_exact);
    j["R_denominator"] = poly_json(R.denominator_exact);
    j["structure"] = {{"explicit", f.explicit_method},     {"explicit_first_line", f.explicit_first_line},
                      {"dirk", f.dirk},                    {"sdirk", f.sdirk},
                      {"stiffly_accurate", f.stiffly_accurate}, {"fully_implicit", f.fully_implicit}};
    return j;
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

int cmd_derive(const std::string& family, int s, bool cauchy, const std::string& taus, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
    const bool nc = family == "closed-nc" || family == "open-nc";
    if (cauchy && !nc) throw UsageError("--cauchy applies to closed-nc and open-nc only");
    if (!taus.empty() && family != "collocation") throw UsageError("--taus applies to collocation only");
    ButcherTableau T;
    if (family == "collocation") {
        if (taus.empty()) throw UsageError("collocation needs --taus");
        std::vector<Rational> nodes;
        for (const auto& t : split(taus, ',')) nodes.push_back(parse_rational(t));
        T = derive_collocation(nodes);
    } else {
        if (s < 1) throw UsageError("missing stage count");
        if (family == "closed-nc") {
            if (s < 2) throw UsageError("closed-nc needs s >= 2");
            T = derive_closed_nc(s, cauchy);
        } else if (family == "open-nc") {
            T = derive_open_nc(s, cauchy);
        } else if (family == "gauss") {
            T = derive_gauss(NodeKind::gauss_legendre, s);
        } else if (family == "radau-left") {
            T = derive_gauss(NodeKind::radau_left, s);
        } else if (family == "radau-right") {
            T = derive_gauss(NodeKind::radau_right, s);
        } else if (family == "lobatto") {
            T = derive_gauss(NodeKind::lobatto, s);
        } else {
            throw UsageError("unknown family: " + family);
        }
    }
    const std::string text = tableau_to_json(T) + "\n";
    if (out_path.empty()) {
        out << text;
        err << render_table(T);
    } else {
        write_file(out_path, text);
        out << render_table(T);
    }
    return kExitOk;
}

int cmd_stability(const std::string& ref, double ymax, int samples, bool region, const std::string& out_path,
                  std::ostream& out) {
    const ButcherTableau T = resolve_tableau(ref);
    const StabilityFunction R = stability_function(T);
    const StabilityVerdict v = is_a_stable(R);
    out << "R numerator:   " << poly_json(R.numerator_exact).dump() << '\n';
    out << "R denominator: " << poly_json(R.denominator_exact).dump() << '\n';
    out << "A-stable: " << (v.a_stable ? "yes" : "no") << " (" << v.evidence.reason << ")\n";
    std::ostringstream csv;
    if (region) {
        csv << "x,y,abs_R\n";
        for (int i = 0; i < samples; ++i)
            for (int k = 0; k < samples; ++k) {
                const double x = -ymax + 2 * ymax * i / (samples - 1);
                const double y = -ymax + 2 * ymax * k / (samples - 1);
                csv << fmt("%.6g", x) << ',' << fmt("%.6g", y) << ',' << fmt("%.10e", std::abs(R({x, y}))) << '\n';
            }
    } else {
        csv << "y,re_R,im_R,abs_R\n";
        for (int k = 0; k < samples; ++k) {
            const double y = -ymax + 2 * ymax * k / (samples - 1);
            const auto r = R({0.0, y});
            csv << fmt("%.10g", y) << ',' << fmt("%.10e", r.real()) << ',' << fmt("%.10e", r.imag()) << ','
                << fmt("%.10e", std::abs(r)) << '\n';
        }
    }
    if (out_path.empty())
        out << csv.str();
    else
        write_file(out_path, csv.str());
    return kExitOk;
}

int cmd_solve(const std::string& ref, const std::string& problem, int N, const std::vector<std::string>& params,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
    if (N < 1) throw UsageError("--N must be positive");
    const ButcherTableau T = resolve_tableau(ref);
    std::map<std::string, double> overrides;
    for (const auto& p : params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) throw UsageError("--param expects key=value");
        overrides[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
    }
    const NamedProblem np = make_problem(problem, overrides);
    SolveResult r;
    try {
        r = integrate(T, np.problem, N);
    } catch (const std::runtime_error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    const std::string csv = solution_csv(r, np.problem);
    if (out_path.empty())
        out << csv;
    else
        write_file(out_path, csv);
    if (np.problem.exact) {
        std::vector<VecX> exact;
        for (double x : r.grid) exact.push_back(np.problem.exact(x));
        const ErrorReport e = compute_errors(exact, r.values, (np.problem.b - np.problem.a) / N);
        (out_path.empty() ? err : out) << "e_a=" << fmt("%.6e", e.e_a) << " e_r=" << fmt("%.6e", e.e_r)
                                       << " e_2=" << fmt("%.6e", e.e_2) << " e_r2=" << fmt("%.6e", e.e_r2) << '\n';
    }
    return kExitOk;
}

int cmd_experiment(const std::string& id, bool check, const std::string& out_dir, bool sweep_only,
                   const std::string& methods, const std::string& Ns, std::ostream& out) {
    ExperimentSpec spec = default_spec(id);
    if (!out_dir.empty()) spec.output_dir = out_dir;
    if (sweep_only) {
        if (spec.id != "exp4a") throw UsageError("--lambda-sweep applies to experiment 4a only");
        spec.lambda_sweep_only = true;
    }
    if (!methods.empty()) {
        spec.methods = split(methods, ',');
        if (!spec.sweep_methods.empty()) spec.sweep_methods = spec.methods;
    }
    if (!Ns.empty()) {
        spec.N_values.clear();
        for (const auto& n : split(Ns, ',')) spec.N_values.push_back(std::stoi(n));
    }
    const ExperimentResult r = run_experiment(spec);
    const auto files = write_experiment(r, spec.output_dir);
    for (const auto& row : r.rows) {
        if (row.ok) continue;
        out << "failed: " << row.method << " N=" << row.N << (row.series.empty() ? "" : " " + row.series) << ": "
            << row.failure << '\n';
    }
    for (const auto& p : r.sweep) {
        out << p.method << " lambda=" << fmt("%g", p.lambda) << " EOC_r2="
            << (p.ok ? (p.eoc ? fmt("%.3f", *p.eoc) : std::string("floor")) : "failed") << '\n';
    }
    int pass = 0, fail = 0, floor = 0;
    for (const auto& c : r.checks) {
        if (c.status == "pass") ++pass;
        if (c.status == "floor") ++floor;
        if (c.status != "fail") continue;
        ++fail;
        if (check)
            out << "check failed: " << c.table << ' ' << c.method << ' ' << c.column << ' ' << c.quantity
                << " printed=" << fmt("%.4e", c.printed) << " reproduced=" << fmt("%.4e", c.reproduced) << " ("
                << c.rule << ")\n";
    }
    if (!r.checks.empty())
        out << "checks: " << pass << " pass, " << fail << " fail, " << floor << " floor\n";
    out << "wrote " << files.size() << " files to " << spec.output_dir << '\n';
    if (r.numerical_failure) return kExitNumerical;
    if (check && r.checks_failed()) return kExitNumerical;
    return kExitOk;
}

int cmd_catalog(const std::string& name, std::ostream& out) {
    if (name.empty()) {
        for (const auto& n : catalog_names()) {
            const CatalogEntry& e = catalog_entry(n);
            out << n;
            if (e.order) out << "  order " << *e.order;
            if (e.pqr) out << "  pqr " << (*e.pqr)[0] << ' ' << (*e.pqr)[1] << ' ' << (*e.pqr)[2];
            if (!e.discrepancy.empty()) out << "  (corrected)";
            out << '\n';
        }
        return kExitOk;
    }
    const CatalogEntry& e = catalog_entry(name);
    out << tableau_to_json(e.tableau) << '\n' << render_table(e.tableau);
    if (!e.discrepancy.empty()) out << "printed values differ: " << e.discrepancy << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Implicit Runge-Kutta methods from repeated-integral quadrature", "irk"};
    app.require_subcommand(1);

    std::string family, taus, tab, problem, out_path, exp_id, methods, Ns, cat_name;
    int s = 0, N = 0, samples = 401;
    bool cauchy = false, check = false, sweep_only = false, region = false;
    double ymax = 1e3;
    std::vector<std::string> params;

    auto* derive = app.add_subcommand("derive", "Derive a tableau");
    derive->add_option("family", family, "closed-nc, open-nc, gauss, radau-left, radau-right, lobatto, collocation")
        ->required();
    derive->add_option("s", s, "Number of stages");
    derive->add_flag("--cauchy", cauchy, "Cauchy-formula weights (Newton-Cotes only)");
    derive->add_option("--taus", taus, "Comma-separated collocation nodes");
    derive->add_option("--out", out_path, "Write the JSON here");

    auto* analyze = app.add_subcommand("analyze", "Order, simplifying conditions and stability");
    analyze->add_option("tableau", tab, "Catalog name or JSON file")->required();

    auto* stability = app.add_subcommand("stability", "Stability function and axis sampling");
    stability->add_option("tableau", tab, "Catalog name or JSON file")->required();
    stability->add_option("--ymax", ymax, "Half-width of the sampled range");
    stability->add_option("--samples", samples, "Samples per axis")->check(CLI::Range(2, 100000));
    stability->add_flag("--region", region, "Sample a square of the complex plane");
    stability->add_option("--out", out_path, "Write the CSV here");

    auto* solve = app.add_subcommand("solve", "Integrate a test problem");
    solve->add_option("--tableau", tab, "Catalog name or JSON file")->required();
    solve->add_option("--problem", problem, "exp1, exp2a, exp2b, exp3, exp4a, exp4b, exp5")->required();
    solve->add_option("--N", N, "Number of uniform steps")->required();
    solve->add_option("--param", params, "Problem override key=value");
    solve->add_option("--out", out_path, "Write the solution CSV here");

    auto* experiment = app.add_subcommand("experiment", "Reproduce a numerical experiment");
    experiment->add_option("id", exp_id, "1, 2a, 2b, 3, 4a, 4b, 5")->required();
    experiment->add_flag("--check", check, "Grade against the reference tables");
    experiment->add_option("--out", out_path, "Output directory");
    experiment->add_flag("--lambda-sweep", sweep_only, "Only the stiffness sweep (4a)");
    experiment->add_option("--methods", methods, "Comma-separated method names");
    experiment->add_option("--N", Ns, "Comma-separated step counts");

    auto* cat = app.add_subcommand("catalog", "List or show published tableaux");
    cat->add_option("name", cat_name);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (derive->parsed()) return cmd_derive(family, s, cauchy, taus, out_path, out, err);
        if (analyze->parsed()) {
            out << analysis_json(resolve_tableau(tab)).dump(2) << '\n';
            return kExitOk;
        }
        if (stability->parsed()) return cmd_stability(tab, ymax, samples, region, out_path, out);
        if (solve->parsed()) return cmd_solve(tab, problem, N, params, out_path, out, err);
        if (experiment->parsed()) return cmd_experiment(exp_id, check, out_path, sweep_only, methods, Ns, out);
        if (cat->parsed()) return cmd_catalog(cat_name, out);
    } catch (const UnknownName& e) {
        err << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}

}  // namespace irk
