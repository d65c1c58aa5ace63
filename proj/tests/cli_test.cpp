#include "mnc/json_io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using mnc::json;

namespace {

const fs::path scratch{MNC_SCRATCH_DIR};

std::string input(const std::string& name) { return std::string(MNC_INPUTS_DIR) + "/" + name; }

// stderr goes to a file per test so parallel ctest runs do not collide
fs::path stderr_file() {
    return scratch / (std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) + ".stderr");
}

int run(const std::string& args) {
    fs::create_directories(scratch);
    const std::string cmd = std::string(MNCTK_PATH) + " " + args + " >/dev/null 2>" + stderr_file().string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

fs::path fresh(const std::string& name) {
    fs::create_directories(scratch);
    const fs::path p = scratch / name;
    fs::remove(p);
    fs::remove(fs::path(p).replace_extension(".csv"));
    return p;
}

std::size_t line_count(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        n += c == '\n';
    return n;
}

} // namespace

TEST(Cli, UnknownCommandIsUsageError) { EXPECT_EQ(run("frobnicate"), 2); }

TEST(Cli, MissingCommandIsUsageError) { EXPECT_EQ(run(""), 2); }

TEST(Cli, CheckAxiomsOnBetaPasses) {
    const fs::path out = fresh("axioms.json");
    ASSERT_EQ(run("check-axioms -i " + input("axioms_beta.json") + " --samples 200 -o " + out.string()), 0);
    const json r = json::parse(slurp(out));
    EXPECT_EQ(r["schema_version"], mnc::schema_version);
    EXPECT_EQ(r["command"], "check-axioms");
    EXPECT_TRUE(r["passed"].get<bool>());
    EXPECT_EQ(r["config"]["seed"], 42);
    const std::string csv = slurp(fs::path(out).replace_extension(".csv"));
    EXPECT_EQ(csv.rfind("property,required,trials,violations,tolerance\n", 0), 0U);
}

TEST(Cli, NegativeControlsExitOne) {
    const fs::path out = fresh("constant.json");
    ASSERT_EQ(run("check-axioms -i " + input("axioms_constant.json") + " --samples 50 -o " + out.string()), 1);
    const json r = json::parse(slurp(out));
    EXPECT_EQ(r["results"]["first_failure"], "noncompactness");
    EXPECT_EQ(run("check-axioms -i " + input("axioms_beta_squared_as_sublinear.json") + " --samples 50"), 1);
}

TEST(Cli, SharpnessFamilyExitsZero) {
    const fs::path out = fresh("sharp.json");
    ASSERT_EQ(run("ineq-verify -i " + input("sharpness_flat.json") + " -o " + out.string()), 0);
    const json r = json::parse(slurp(out));
    const json& last = r["results"]["reports"].back();
    EXPECT_EQ(last["t"], 2.0);
    EXPECT_FALSE(last["holds_plain"].get<bool>());
    EXPECT_TRUE(last["holds_scaled"].get<bool>());
    EXPECT_FALSE(last["plain_guaranteed"].get<bool>());
}

TEST(Cli, DemoSharpnessAndInequivalencePass) {
    EXPECT_EQ(run("demo-sharpness"), 0);
    const fs::path out = fresh("ineq.json");
    ASSERT_EQ(run("demo-inequivalent -i " + input("inequivalent.json") + " -o " + out.string()), 0);
    const json r = json::parse(slurp(out));
    EXPECT_EQ(r["results"]["sup_ratio"], 5.0);
    EXPECT_EQ(r["results"]["inf_ratio"], 1.0);
}

TEST(Cli, MalformedInputWritesNothing) {
    const fs::path out = fresh("bad.json");
    EXPECT_EQ(run("check-axioms -i " + input("malformed.json") + " -o " + out.string()), 2);
    EXPECT_FALSE(fs::exists(out));
    EXPECT_FALSE(fs::exists(fs::path(out).replace_extension(".csv")));
    EXPECT_EQ(run("check-axioms -i " + input("does_not_exist.json") + " -o " + out.string()), 2);
    EXPECT_FALSE(fs::exists(out));
}

TEST(Cli, SchemaErrorNamesThePath) {
    const fs::path in = fresh("schema_bad_input.json");
    std::ofstream(in) << R"({"mnc": {"kind": "weighted_sup", "weights": [[1, -1]]}})";
    const fs::path out = fresh("schema_bad.json");
    EXPECT_EQ(run("mnc-eval -i " + in.string() + " -o " + out.string()), 2);
    EXPECT_FALSE(fs::exists(out));
    EXPECT_NE(slurp(stderr_file()).find("$.mnc"), std::string::npos);
}

TEST(Cli, EmptySweepIsValidJson) {
    const fs::path out = fresh("empty_sweep.json");
    ASSERT_EQ(run("ineq-verify -i " + input("sweep_empty.json") + " -o " + out.string()), 0);
    const json r = json::parse(slurp(out));
    EXPECT_EQ(r["results"]["checks"], 0);
    EXPECT_TRUE(r["passed"].get<bool>());
    EXPECT_EQ(line_count(slurp(fs::path(out).replace_extension(".csv"))), 1U);
}

TEST(Cli, SolveWritesOneCsvRowPerGridPoint) {
    const fs::path out = fresh("decay.json");
    ASSERT_EQ(run("cauchy-solve -i " + input("cauchy_decay.json") + " -o " + out.string()), 0);
    const json r = json::parse(slurp(out));
    EXPECT_TRUE(r["results"]["success"].get<bool>());
    EXPECT_NEAR(r["results"]["final_state"][0].get<double>(), std::exp(-1.0), 1e-6);
    const std::size_t points = r["results"]["grid_points"].get<std::size_t>();
    EXPECT_EQ(points, 1001U);
    const std::string csv = slurp(fs::path(out).replace_extension(".csv"));
    EXPECT_EQ(csv.rfind("t,x0,u\n", 0), 0U);
    EXPECT_EQ(line_count(csv), points + 1);
}

TEST(Cli, SolveReportsHypothesisViolation) {
    const fs::path out = fresh("gate.json");
    ASSERT_EQ(run("cauchy-solve -i " + input("cauchy_gate.json") + " -o " + out.string()), 1);
    const json r = json::parse(slurp(out));
    EXPECT_EQ(r["results"]["hypothesis_violation"]["condition"], "rhs_bound_within_radius");
}

TEST(Cli, SetsAndMncEval) {
    const fs::path out = fresh("sets.json");
    ASSERT_EQ(run("sets -i " + input("sets_queries.json") + " -o " + out.string()), 0);
    const json r = json::parse(slurp(out))["results"];
    EXPECT_EQ(r[1]["value"], 3.0);
    EXPECT_EQ(r[3]["value"], 2.0);
    EXPECT_EQ(r[6]["value"], 1.5);
    EXPECT_TRUE(r[8]["value"].get<bool>());

    const fs::path ev = fresh("eval.json");
    ASSERT_EQ(run("mnc-eval -i " + input("mnc_eval.json") + " -o " + ev.string()), 0);
    const json e = json::parse(slurp(ev))["results"];
    EXPECT_EQ(e["values"][0]["value"], 2.0);
    EXPECT_TRUE(e["values"][1]["dual_matches"].get<bool>());
}

TEST(Cli, ReportsAreByteIdenticalAcrossRuns) {
    const fs::path a = fresh("rerun_a.json");
    const fs::path b = fresh("rerun_b.json");
    ASSERT_EQ(run("check-axioms -i " + input("axioms_beta.json") + " --samples 100 --seed 9 -o " + a.string()), 0);
    ASSERT_EQ(run("check-axioms -i " + input("axioms_beta.json") + " --samples 100 --seed 9 -o " + b.string()), 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(fs::path(a).replace_extension(".csv")), slurp(fs::path(b).replace_extension(".csv")));
}
