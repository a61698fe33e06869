#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result
{
    int         code;
    std::string out;
    std::string err;
};

Result run(std::initializer_list<const char*> args)
{
    std::vector<const char*> argv{"adiwave"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out;
    std::ostringstream err;
    const int code = adiwave::cli::parse_and_run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s)
{
    std::size_t n = 0;
    for (char c : s) {
        n += c == '\n';
    }
    return n;
}

} // namespace

using adiwave::cli::ExitCode;

TEST(Cli, ConvergeRowCount)
{
    const Result r = run({"converge", "--scheme", "cfd", "--gamma", "0", "--k", "1", "--n", "16,24,32,48,64",
                          "--periods", "0.5", "--no-timing"});
    ASSERT_EQ(r.code, ExitCode::ok) << r.err;
    // header + 5 rows + AVERAGE
    EXPECT_EQ(count_lines(r.out), 7u);
    EXPECT_NE(r.out.find("\nAVERAGE,"), std::string::npos);
}

TEST(Cli, SimulateDivergesAboveCflMax)
{
    const Result r = run({"simulate", "--scheme", "mfd", "--n", "64", "--cfl", "1.3"});
    EXPECT_EQ(r.code, ExitCode::diverged);
    EXPECT_EQ(count_lines(r.err), 1u);
}

TEST(Cli, BenchRows)
{
    const Result r = run({"bench", "--scheme", "cfd", "--n", "32", "--workers", "1,4", "--steps", "2"});
    ASSERT_EQ(r.code, ExitCode::ok) << r.err;
    EXPECT_EQ(count_lines(r.out), 3u);
    EXPECT_EQ(r.out.rfind("scheme,N,workers,steps,wall_time_s,speedup\n", 0), 0u);
}

TEST(Cli, SimulateCsv)
{
    const Result r = run({"simulate", "--scheme", "mfd", "--n", "16", "--periods", "1"});
    ASSERT_EQ(r.code, ExitCode::ok) << r.err;
    EXPECT_EQ(count_lines(r.out), 2u);
    EXPECT_EQ(r.out.rfind("scheme,gamma,k,N,dt,steps,time,error_fro,avg_inner_iters,max_inner_iters\nmfd,0,1,16,", 0),
              0u)
        << r.out;
}

TEST(Cli, IdenticalConfigGivesIdenticalBytes)
{
    auto once = [] {
        return run({"converge", "--scheme", "mfd", "--gamma", "2", "--k", "2", "--n", "16,24,32", "--periods", "1",
                    "--no-timing"});
    };
    const Result a = once();
    const Result b = once();
    ASSERT_EQ(a.code, ExitCode::ok);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, ExitCode::usage_error);
    EXPECT_EQ(run({"simulate", "--n", "16", "--bogus", "1"}).code, ExitCode::usage_error);
    EXPECT_EQ(run({"simulate", "--n", "16", "--scheme", "fem"}).code, ExitCode::usage_error);
    EXPECT_EQ(run({"simulate", "--n", "sixteen"}).code, ExitCode::usage_error);
    EXPECT_EQ(run({"frobnicate"}).code, ExitCode::usage_error);
    EXPECT_EQ(run({"converge", "--n", "16,24,32", "--coupling", "gauss"}).code, ExitCode::usage_error);
}

TEST(Cli, ConfigErrors)
{
    EXPECT_EQ(run({"simulate", "--n", "4"}).code, ExitCode::config_error);
    EXPECT_EQ(run({"simulate", "--n", "16,24"}).code, ExitCode::config_error);
    EXPECT_EQ(run({"simulate", "--n", "16", "--cfl", "-1"}).code, ExitCode::config_error);
    EXPECT_EQ(run({"simulate", "--n", "16", "--eps", "0"}).code, ExitCode::config_error);
    EXPECT_EQ(run({"simulate", "--n", "16", "--min-check", "9"}).code, ExitCode::config_error);
    EXPECT_EQ(run({"simulate", "--n", "16", "--k", "0"}).code, ExitCode::config_error);
    EXPECT_EQ(run({"simulate", "--n", "16", "--rho", "0"}).code, ExitCode::config_error);
    EXPECT_EQ(run({"converge", "--n", "32,16,24"}).code, ExitCode::config_error);
    EXPECT_EQ(run({"bench", "--n", "16", "--steps", "0"}).code, ExitCode::config_error);
}

TEST(Cli, HelpExitsCleanly)
{
    const Result r = run({"--help"});
    EXPECT_EQ(r.code, ExitCode::ok);
    EXPECT_NE(r.out.find("converge"), std::string::npos);
}

TEST(Cli, OutputFileAndSnapshot)
{
    const auto dir  = std::filesystem::temp_directory_path();
    const auto csv  = (dir / "adiwave_cli_test.csv").string();
    const auto snap = (dir / "adiwave_cli_snap.txt").string();
    const Result r  = run({"simulate", "--n", "16", "--periods", "0.2", "--output", csv.c_str(), "--snapshot",
                           snap.c_str()});
    ASSERT_EQ(r.code, ExitCode::ok) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(csv);
    std::string   header;
    std::getline(f, header);
    EXPECT_EQ(header.rfind("scheme,", 0), 0u);
    std::ifstream s(snap);
    std::string   first;
    std::getline(s, first);
    EXPECT_EQ(first.front(), '#');
    std::filesystem::remove(csv);
    std::filesystem::remove(snap);
}

TEST(Cli, WorkersFromEnvironment)
{
    ::setenv("ADIWAVE_WORKERS", "2", 1);
    const Result r = run({"bench", "--n", "16", "--steps", "1", "--no-timing"});
    EXPECT_EQ(r.code, ExitCode::ok) << r.err;
    EXPECT_EQ(count_lines(r.out), 3u); // workers 1 baseline plus 2
    ::setenv("ADIWAVE_WORKERS", "zero", 1);
    EXPECT_EQ(run({"simulate", "--n", "16", "--periods", "0.1"}).code, ExitCode::config_error);
    // An explicit flag wins over a bad environment value.
    EXPECT_EQ(run({"simulate", "--n", "16", "--periods", "0.1", "--workers", "1"}).code, ExitCode::ok);
    ::unsetenv("ADIWAVE_WORKERS");
}
