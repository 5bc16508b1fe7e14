#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>

#include "cqfit/pac/fitters.hpp"
#include "cqfit/pac/scenarios.hpp"
#include "cqfit/text.hpp"

using namespace cqfit;
namespace fs = std::filesystem;

namespace {

const std::string kData = CQFIT_TEST_DATA;
const std::string kCli = CQFIT_CLI;

struct CliRun {
    int code;
    std::string out;
};

// Runs the CLI with stdout captured and stderr discarded.
CliRun cli(const std::string& args, const std::string& env = "") {
    const std::string command = env + " '" + kCli + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        return {-1, ""};
    }
    std::string out;
    std::array<char, 4096> buffer;
    while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe)) {
        out.append(buffer.data(), n);
    }
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("cqfit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string tmp(const std::string& name) const { return (dir_ / name).string(); }
    static std::string data(const std::string& name) { return kData + "/" + name; }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, HomFigure1Witness) {
    CliRun r = cli("hom " + data("fig1/I_q.ex") + " " + data("fig1/I_qT.ex"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "y0 -> x0\ny1 -> x1\ny2 -> x2\n");
}

TEST_F(CliTest, HomIdentityAndNone) {
    CliRun id = cli("hom " + data("fig1/I_q.ex") + " " + data("fig1/I_q.ex"));
    EXPECT_EQ(id.out, "y0 -> y0\ny1 -> y1\ny2 -> y2\n");
    CliRun none = cli("hom " + data("fig1/I_qT.ex") + " " + data("fig1/D_q.golden.ex"));
    EXPECT_EQ(none.code, 0);
    EXPECT_EQ(none.out, "none\n");
}

TEST_F(CliTest, SchemaMismatchIsUsageError) {
    write_file(tmp("bad.ex"), "R(a)\n#answer a\n");
    EXPECT_EQ(cli("hom " + data("fig1/I_q.ex") + " " + tmp("bad.ex")).code, 2);
    EXPECT_EQ(cli("hom " + data("fit/single.ex") + " " + data("fit/ternary.ex")).code, 0);
}

TEST_F(CliTest, ParseErrorsAndUsage) {
    write_file(tmp("broken.ex"), "R(a,b\n#answer a\n");
    EXPECT_EQ(cli("hom " + tmp("broken.ex") + " " + data("fig1/I_q.ex")).code, 2);
    EXPECT_EQ(cli("").code, 2);
    EXPECT_EQ(cli("nosuchcommand").code, 2);
    EXPECT_EQ(cli("hom " + tmp("missing.ex") + " " + data("fig1/I_q.ex")).code, 2);
}

TEST_F(CliTest, EvalAndContained) {
    CliRun eval = cli("eval " + data("fit/q_ra.cq") + " " + data("fit/inst.txt"));
    EXPECT_EQ(eval.code, 0);
    EXPECT_EQ(eval.out, "a\n");
    EXPECT_EQ(cli("eval --example " + data("fit/q_ra.cq") + " " + data("fit/single.ex")).out, "positive\n");
    EXPECT_EQ(cli("contained " + data("fit/q_ra.cq") + " " + data("fit/q_r.cq")).out, "true\n");
    EXPECT_EQ(cli("contained " + data("fit/q_r.cq") + " " + data("fit/q_ra.cq")).out, "false\n");
}

TEST_F(CliTest, ProductMatchesLibrary) {
    CliRun r = cli("product " + data("fig1/I_q.ex") + " " + data("fig1/I_qT.ex"));
    EXPECT_EQ(r.code, 0);
    const Example a = parse_example(read_file(data("fig1/I_q.ex")));
    const Example b = parse_example(read_file(data("fig1/I_qT.ex")));
    EXPECT_EQ(r.out, serialize(product_example(a, b)));
}

TEST_F(CliTest, FitSinglePositiveGivesCanonicalCq) {
    CliRun r = cli("fit --pos " + data("fit/single.ex") + " --verify");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "q(a) :- A(b), R(a,b)\n");
}

TEST_F(CliTest, FitContradictionExitsOne) {
    EXPECT_EQ(cli("fit " + data("fit/contradictory.col")).code, 1);
    EXPECT_EQ(cli("fit --strategy smallest-path " + data("fit/contradictory.col")).code, 1);
}

TEST_F(CliTest, FitFromDirectory) {
    fs::create_directories(dir_ / "col" / "pos");
    fs::create_directories(dir_ / "col" / "neg");
    write_file(tmp("col/pos/1.ex"), "R(a,b)\nA(b)\n#answer a\n");
    write_file(tmp("col/pos/2.ex"), "R(c,d)\nA(d)\nB(d)\n#answer c\n");
    write_file(tmp("col/neg/1.ex"), "R(e,f)\nB(f)\n#answer e\n");
    CliRun dir = cli("fit --strategy smallest-path " + tmp("col"));
    CliRun file = cli("fit --strategy smallest-path " + data("fit/small.col"));
    EXPECT_EQ(dir.code, 0);
    EXPECT_EQ(dir.out, "q(x0) :- R(x0,x1), A(x1)\n");
    EXPECT_EQ(dir.out, file.out);
    EXPECT_EQ(cli("fit --minimize --verify " + tmp("col")).out, "q(<a,c>) :- A(<b,d>), R(<a,c>,<b,d>)\n");
}

TEST_F(CliTest, FitTheorem4SampleMatchesLibrary) {
    CliRun ex = cli("experiment --scenario thm4 --n 3 --m 12 --trials 1 --seed 5 --dump-sample " + tmp("sample.col"));
    ASSERT_EQ(ex.code, 0);
    CliRun r = cli("fit --strategy scenario-most-general --n 3 " + tmp("sample.col"));
    ASSERT_EQ(r.code, 0);
    auto scenario = pac::build_theorem4_scenario(3);
    auto collection = parse_collection(read_file(tmp("sample.col")));
    EXPECT_EQ(r.out, serialize(pac::fit_scenario_most_general(collection, scenario).query) + "\n");
}

TEST_F(CliTest, DualFigure1) {
    CliRun r = cli("dual " + data("fig1/I_q.ex") + " " + data("fig1/I_qT.ex") + " --out " + tmp("d.ex") +
                " --verify-probes 40 --seed 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(read_file(tmp("d.ex")), read_file(data("fig1/D_q.golden.ex")));
    EXPECT_NE(r.out.find("case: constructed"), std::string::npos);
    EXPECT_NE(r.out.find("duality: pass (checked=40"), std::string::npos);
}

TEST_F(CliTest, DualNonMappingEmitsAnchor) {
    write_file(tmp("i.ex"), "R(a0,a1)\nA(a1)\n#answer a0\n");
    write_file(tmp("j.ex"), "R(b0,b1)\nB(b1)\n#answer b0\n");
    CliRun r = cli("dual " + tmp("i.ex") + " " + tmp("j.ex"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, serialize(parse_example(read_file(tmp("j.ex")))));
}

TEST_F(CliTest, DualShapeErrorAndSeedRequired) {
    EXPECT_EQ(cli("dual " + data("fit/ternary.ex") + " " + data("fig1/I_qT.ex")).code, 2);
    EXPECT_EQ(cli("dual " + data("fig1/I_q.ex") + " " + data("fig1/I_qT.ex") + " --verify-probes 5").code, 2);
    EXPECT_EQ(cli("dual " + data("fig1/I_q.ex") + " " + data("fig1/I_qT.ex") + " --verify-probes 0").code, 0);
}

TEST_F(CliTest, VerifyDuality) {
    std::string base = "verify-duality --anchor " + data("fig1/I_qT.ex") + " --obstruction " + data("fig1/I_q.ex");
    CliRun ok = cli(base + " --dual " + data("fig1/D_q.golden.ex") + " --probes 30 --seed 2");
    EXPECT_EQ(ok.code, 0);
    CliRun bad = cli(base + " --dual " + data("fig1/I_qT.ex") + " --probes 30 --seed 2");
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("duality: fail"), std::string::npos);
}

TEST_F(CliTest, ExperimentReportsAndDeterminism) {
    std::string args = "experiment --scenario thm5 --n 6 --m 5 --trials 3 --seed 9 --csv " + tmp("r.csv");
    CliRun a = cli(args + " --out " + tmp("a.json"));
    CliRun b = cli(args + " --out " + tmp("b.json") + " --jobs 2");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out.rfind("scenario=thm5 n=6 m=5 trials=3 frac_error_gt_eps=", 0), 0u);
    EXPECT_EQ(read_file(tmp("a.json")), read_file(tmp("b.json")));
    EXPECT_EQ(read_file(tmp("r.csv")).rfind("trial,m,distinct,error_num,error_den,fitter,elapsed_ms\n", 0), 0u);
}

TEST_F(CliTest, ExperimentZeroTrials) {
    CliRun r = cli("experiment --scenario thm4 --n 3 --m 4 --trials 0 --seed 1 --out " + tmp("e.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "scenario=thm4 n=3 m=4 trials=0 frac_error_gt_eps=0.000000\n");
}

TEST_F(CliTest, ExperimentValidation) {
    EXPECT_EQ(cli("experiment --scenario thm4 --n 3 --m 4 --trials 1").code, 2);
    EXPECT_EQ(cli("experiment --scenario thm5 --n 3 --m 4 --trials 1 --seed 1").code, 2);
    EXPECT_EQ(cli("experiment --scenario thm4 --n 3 --m 4 --trials 1 --seed 1 --epsilon 2").code, 2);
}

TEST_F(CliTest, NodeBudgetFromEnvironment) {
    std::string args = "experiment --scenario thm5 --n 4 --m 3 --trials 1 --seed 1";
    EXPECT_EQ(cli(args, "CQFIT_NODE_BUDGET=1").code, 3);
    EXPECT_EQ(cli(args, "CQFIT_NODE_BUDGET=junk").code, 2);
    EXPECT_EQ(cli(args, "CQFIT_NODE_BUDGET=1000000").code, 0);
}
