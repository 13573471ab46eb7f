#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

#include "helpers.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int status = -1;
    std::string out;
};

Result cli(const std::string& args)
{
    const fs::path log = fs::temp_directory_path() / "isc_cli_test.log";
    const std::string cmd = std::string(ISC_CLI) + " " + args + " > " + log.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    Result r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = isc::test::slurp(log.string());
    return r;
}

std::string fixture(const std::string& name) { return isc::test::data_path("tests/fixtures/" + name); }
std::string deck(const std::string& name) { return isc::test::data_path("data/decks/" + name); }

}  // namespace

TEST(Cli, SyntaxErrorExitsTwo)
{
    const Result r = cli("run --quiet " + fixture("bad_syntax.deck"));
    EXPECT_EQ(r.status, 2) << r.out;
    EXPECT_NE(r.out.find("line 10"), std::string::npos) << r.out;
}

TEST(Cli, SaturationSumExitsTwo)
{
    const Result r = cli("run --validate-only " + fixture("bad_saturation.deck"));
    EXPECT_EQ(r.status, 2) << r.out;
}

TEST(Cli, ValidateOnly)
{
    const Result r = cli("run --validate-only " + deck("field.deck"));
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("deck ok"), std::string::npos);
}

TEST(Cli, DegenerateTemperatureExitsThree)
{
    const fs::path out = fs::temp_directory_path() / "isc_cli_degenerate";
    const Result r = cli("run --quiet --out " + out.string() + " " + fixture("degenerate_temperature.deck"));
    EXPECT_EQ(r.status, 3) << r.out;
}

TEST(Cli, StallExitsFour)
{
    const fs::path out = fs::temp_directory_path() / "isc_cli_stall";
    const Result r = cli("run --quiet --out " + out.string() + " " + fixture("stall.deck"));
    EXPECT_EQ(r.status, 4) << r.out;
}

TEST(Cli, UnwritableOutputExitsFive)
{
    const Result r = cli("run --quiet --out /dev/null/x " + deck("tube.deck"));
    EXPECT_EQ(r.status, 5) << r.out;
}

TEST(Cli, MissingDeckExitsFive)
{
    const Result r = cli("run --quiet /nonexistent/none.deck");
    EXPECT_EQ(r.status, 5) << r.out;
}

TEST(Cli, CheckJacobian)
{
    const Result r = cli("run --check-jacobian " + deck("tube.deck"));
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("discrepancy"), std::string::npos);
}

TEST(Cli, BenchSingleThread)
{
    const Result r = cli("bench --threads 1 --dims 4,1,3 " + deck("tube.deck"));
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("1.000"), std::string::npos) << r.out;
}

TEST(Cli, RunWritesCsv)
{
    const fs::path out = fs::temp_directory_path() / "isc_cli_run";
    fs::remove_all(out);
    const fs::path summary = out / "summary.json";
    fs::create_directories(out);
    const Result r = cli("run --quiet --out " + out.string() + " --summary-json " + summary.string() + " " +
                         deck("tube.deck"));
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_TRUE(fs::exists(out / "cells.csv"));
    EXPECT_TRUE(fs::exists(out / "wells.csv"));
    EXPECT_TRUE(fs::exists(summary));
    EXPECT_GT(fs::file_size(out / "cells.csv"), 1000u);
}
