#include <apncodes/cli.hpp>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace apncodes;

namespace {

struct CliRun {
    int rc;
    std::string out, err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "apncodes");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {rc, out.str(), err.str()};
}

nlohmann::json json_of(const CliRun& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, N4Both) {
    CliRun r = run({"n4", "--p", "3", "--m", "3", "--k", "1", "--mode", "both"});
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_EQ(json_of(r), nlohmann::json({{"formula", "1353"}, {"bruteforce", "1353"}, {"match", true}}));
}

TEST(Cli, N4Convolution73) {
    CliRun r = run({"n4", "--p", "7", "--m", "3", "--mode", "convolution"});
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_EQ(json_of(r)["convolution"], "232561");
}

TEST(Cli, WeightsMatchTable) {
    CliRun r = run({"weights", "--p", "3", "--m", "3", "--e", "8", "--mode", "both"});
    ASSERT_EQ(r.rc, 0) << r.err;
    auto j = json_of(r);
    EXPECT_EQ(j["match"], true);
    EXPECT_EQ(j["code"], "C(1,8)");
}

TEST(Cli, WeightsAgainstWrongTableExitsOne) {
    CliRun r = run({"weights", "--p", "3", "--m", "3", "--e", "8", "--mode", "both", "--table", "WD-III"});
    EXPECT_EQ(r.rc, 1);
    EXPECT_EQ(json_of(r)["match"], false);
}

TEST(Cli, CsvHasCaptionAndHeader) {
    CliRun r = run({"weights", "--p", "3", "--m", "3", "--e", "8", "--format", "csv"});
    ASSERT_EQ(r.rc, 0) << r.err;
    std::istringstream lines(r.out);
    std::string caption, header;
    std::getline(lines, caption);
    std::getline(lines, header);
    EXPECT_EQ(caption.rfind("# ", 0), 0u);
    EXPECT_NE(caption.find("Weight distribution"), std::string::npos);
    EXPECT_NE(header.find("weight"), std::string::npos);
    EXPECT_NE(header.find("count"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({}).rc, 2);
    EXPECT_EQ(run({"bogus"}).rc, 2);
    EXPECT_EQ(run({"weights", "--p", "3", "--m", "3"}).rc, 2);              // --e missing
    EXPECT_EQ(run({"field", "--p", "9", "--m", "3"}).rc, 2);                // not prime
    EXPECT_EQ(run({"expsum", "--p", "3", "--m", "3", "--k", "3"}).rc, 2);   // gcd(m, k) != 1
    EXPECT_EQ(run({"verify", "--suite", "quick", "--p", "3"}).rc, 2);       // --m missing
    EXPECT_EQ(run({"field", "--p", "3", "--m", "3", "--format", "xml"}).rc, 2);
}

TEST(Cli, BudgetExceededExitsTwo) {
    CliRun r = run({"expsum", "--p", "3", "--m", "5", "--budget", "1000"});
    EXPECT_EQ(r.rc, 2);
    EXPECT_NE(r.err.find("BudgetExceeded"), std::string::npos);
}

TEST(Cli, DualDistExpect) {
    EXPECT_EQ(run({"dualdist", "--p", "3", "--m", "3", "--e", "8", "--expect", "4"}).rc, 0);
    EXPECT_EQ(run({"dualdist", "--p", "3", "--m", "3", "--e", "8", "--expect", "5"}).rc, 1);
    EXPECT_EQ(run({"dualdist", "--p", "3", "--m", "3", "--e", "8", "--with-s", "--expect", "5"}).rc, 0);
}

TEST(Cli, ModulusOption) {
    CliRun canonical = run({"expsum", "--p", "3", "--m", "3", "--mode", "enum"});
    CliRun other = run({"expsum", "--p", "3", "--m", "3", "--mode", "enum", "--modulus", "1,2,1,1"});
    ASSERT_EQ(canonical.rc, 0) << canonical.err;
    ASSERT_EQ(other.rc, 0) << other.err;
    EXPECT_EQ(json_of(canonical)["enumerated"], json_of(other)["enumerated"]);
    EXPECT_EQ(run({"field", "--p", "3", "--m", "3", "--modulus", "1,0,1,1"}).rc, 2);  // not primitive
}

TEST(Cli, OutWritesFile) {
    const std::string path = ::testing::TempDir() + "apncodes_cli_out.json";
    CliRun r = run({"n4", "--p", "3", "--m", "3", "--out", path});
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    nlohmann::json j = nlohmann::json::parse(f);
    EXPECT_EQ(j["match"], true);
    std::remove(path.c_str());
}

TEST(Cli, QuickSuiteIsDeterministic) {
    CliRun a = run({"verify", "--suite", "quick", "--threads", "1"});
    CliRun b = run({"verify", "--suite", "quick", "--threads", "4"});
    ASSERT_EQ(a.rc, 0) << a.err;
    ASSERT_EQ(b.rc, 0) << b.err;
    auto ja = json_of(a), jb = json_of(b);
    EXPECT_EQ(ja["body"].dump(), jb["body"].dump());
    EXPECT_EQ(ja["body_fnv1a64"], jb["body_fnv1a64"]);
    EXPECT_EQ(ja["schema"], "apncodes-report/1");
}

TEST(Cli, PrettyVerifyEndsWithOverall) {
    CliRun r = run({"verify", "--suite", "quick", "--p", "3", "--m", "3", "--format", "pretty"});
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_NE(r.out.find("overall: PASS"), std::string::npos);
}
