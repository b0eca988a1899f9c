#include <doctest.h>

#include "irk/cli.hpp"
#include "irk/experiments.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace irk;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("irk_cli_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("derive closed-nc 4") {
    const Run r = run({"derive", "closed-nc", "4"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["b"] == json({"1/8", "3/8", "3/8", "1/8"}));
    CHECK(j["A"][1][0] == "47/360");
    CHECK(r.err.find("47/360") != std::string::npos);
}

TEST_CASE("derive collocation") {
    const Run r = run({"derive", "collocation", "--taus", "0,0.25,0.5,0.75,1"});
    REQUIRE(r.code == 0);
    const ButcherTableau T = tableau_from_json(r.out);
    CHECK(same_exact_entries(T, catalog("sIRK5")));
}

TEST_CASE("derive usage errors") {
    CHECK(run({"derive", "closed-nc", "1"}).code == kExitUsage);
    CHECK(run({"derive", "gauss", "2", "--cauchy"}).code == kExitUsage);
    CHECK(run({"derive", "closed-nc", "3", "--taus", "0,1"}).code == kExitUsage);
    CHECK(run({"derive", "collocation"}).code == kExitUsage);
    CHECK(run({"derive", "spline", "3"}).code == kExitUsage);
    CHECK(run({"derive", "gauss"}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
}

TEST_CASE("analyze") {
    Run r = run({"analyze", "nIRK4"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["order"] == 4);
    CHECK(j["p"] == 4);
    CHECK(j["q"] == 3);
    CHECK(j["r"] == 0);
    CHECK(j["stage_order"] == 3);
    CHECK(j["a_stable"] == true);
    r = run({"analyze", "RK4"});
    CHECK(json::parse(r.out)["a_stable"] == false);
    r = run({"analyze", "nosuch"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("unknown tableau") != std::string::npos);
}

TEST_CASE("derive then analyze equals analyze by name") {
    const auto dir = scratch("roundtrip");
    for (const auto& [family, s, name] : std::vector<std::tuple<std::string, std::string, std::string>>{
             {"closed-nc", "4", "nIRK4"}, {"open-nc", "3", "nIRK3o"}, {"gauss", "2", "nIRK-G2"}}) {
        const auto file = (dir / (name + ".json")).string();
        REQUIRE(run({"derive", family, s, "--out", file}).code == 0);
        json a = json::parse(run({"analyze", file}).out);
        json b = json::parse(run({"analyze", name}).out);
        a.erase("name");
        b.erase("name");
        CHECK(a == b);
    }
    const auto bad = dir / "bad.json";
    std::ofstream(bad) << "{ not json";
    CHECK(run({"analyze", bad.string()}).code == kExitUsage);
}

TEST_CASE("stability subcommand") {
    const auto dir = scratch("stability");
    const auto csv = dir / "axis.csv";
    const Run r = run({"stability", "nIRK4", "--samples", "11", "--ymax", "5", "--out", csv.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("A-stable: yes") != std::string::npos);
    const std::string text = slurp(csv);
    CHECK(text.rfind("y,re_R,im_R,abs_R\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 12);
}

TEST_CASE("solve subcommand") {
    const auto dir = scratch("solve");
    const auto csv = dir / "sol.csv";
    Run r = run({"solve", "--tableau", "nIRK4", "--problem", "exp1", "--N", "8", "--out", csv.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("e_r=") != std::string::npos);
    const std::string text = slurp(csv);
    CHECK(text.rfind("x,y_1,exact_1\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 10);
    r = run({"solve", "--tableau", "nIRK4", "--problem", "exp4a", "--N", "8", "--param", "lambda=-100", "--out",
             csv.string()});
    CHECK(r.code == 0);
    CHECK(run({"solve", "--tableau", "nIRK4", "--problem", "exp1", "--N", "8", "--param", "mu=3"}).code == kExitUsage);
    CHECK(run({"solve", "--tableau", "nIRK4", "--problem", "exp9", "--N", "8"}).code == kExitUsage);
    CHECK(run({"solve", "--tableau", "nIRK4", "--problem", "exp1", "--N", "0"}).code == kExitUsage);
}

TEST_CASE("catalog subcommand") {
    Run r = run({"catalog"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("nIRK5c") != std::string::npos);
    r = run({"catalog", "sIRK4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("11/8") != std::string::npos);
    CHECK(run({"catalog", "nosuch"}).code == kExitUsage);
}

TEST_CASE("experiment defaults") {
    const auto s1 = default_spec("1");
    CHECK(s1.id == "exp1");
    CHECK(s1.N_values == std::vector<int>{2, 4, 8, 16, 32, 64, 128});
    CHECK(s1.methods.size() == 12);
    CHECK(default_spec("2a").N_values.front() == 4);
    CHECK(default_spec("2a").N_values.back() == 1024);
    CHECK(default_spec("exp2b").N_values == std::vector<int>{256});
    CHECK(default_spec("3").N_values.front() == 32);
    CHECK(default_spec("4a").N_values.back() == 512);
    CHECK_FALSE(default_spec("4a").sweep_methods.empty());
    CHECK(default_spec("5").N_values.front() == 15);
    CHECK_THROWS_AS(default_spec("9"), UnknownId);
}

TEST_CASE("experiment output is deterministic and self-graded") {
    const auto a = scratch("exp_a"), b = scratch("exp_b");
    REQUIRE(run({"experiment", "2b", "--check", "--out", a.string()}).code == 0);
    REQUIRE(run({"experiment", "2b", "--check", "--out", b.string()}).code == 0);
    int csvs = 0;
    for (const auto& entry : std::filesystem::directory_iterator(a)) {
        const auto name = entry.path().filename();
        if (entry.path().extension() != ".csv") continue;
        ++csvs;
        CHECK(slurp(entry.path()) == slurp(b / name));
    }
    CHECK(csvs == 14);
    const json m = json::parse(slurp(a / "exp2b_manifest.json"));
    CHECK(m["summary"]["checks_failed"] == 0);
    CHECK(m["summary"]["checks_passed"] == 35);
    CHECK(m.contains("generated"));
    const std::string table = slurp(a / "exp2b_nIRK4.csv");
    CHECK(table.rfind("N,e_a,e_r,e_2,e_r2,e_b,e_m,e_n,EOC_r,e_x,status\n", 0) == 0);
}

TEST_CASE("experiment exit codes") {
    const auto dir = scratch("exit");
    // Failing reference checks give exit code 1 under --check.
    CHECK(run({"experiment", "5", "--check", "--out", dir.string()}).code == kExitNumerical);
    CHECK(run({"experiment", "5", "--out", dir.string()}).code == kExitOk);
    CHECK(run({"experiment", "1", "--lambda-sweep", "--out", dir.string()}).code == kExitUsage);
    CHECK(run({"experiment", "1", "--methods", "nosuch", "--out", dir.string()}).code == kExitUsage);
    CHECK(run({"experiment", "9", "--out", dir.string()}).code == kExitUsage);
}

TEST_CASE("lambda sweep") {
    const auto dir = scratch("sweep");
    const Run r = run({"experiment", "4a", "--lambda-sweep", "--methods", "nIRK5,nIRK5c,nIRK4", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const std::string text = slurp(dir / "exp4a_lambda_sweep.csv");
    CHECK(text.rfind("method,lambda,N1,N2,e_r2_N1,e_r2_N2,EOC_r2,status\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 3 * 7);
}

TEST_CASE("recorded Newton failures exit with 1") {
    const auto dir = scratch("newton");
    const Run r = run({"experiment", "4a", "--methods", "nIRK4oc", "--N", "16,32", "--out", dir.string()});
    CHECK(r.code == kExitNumerical);
    CHECK(r.out.find("NewtonDivergence") != std::string::npos);
    const json m = json::parse(slurp(dir / "exp4a_manifest.json"));
    CHECK(m["summary"]["numerical_failure"] == true);
}
