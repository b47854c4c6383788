#include "json.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// Runs the CLI with stderr discarded unless requested.
Run cli(const std::string& args, bool with_stderr = false)
{
    const std::string cmd = std::string(MAHLER_CLI) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

} // namespace

TEST(Cli, UnitsCountRow)
{
    const auto r = cli("count --class units --d 2 --height 1.7320508");
    EXPECT_EQ(r.code, 0);
    const auto lines = split(r.out, '\n');
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0], "class,d,params,H,T,count,main_term,error_bound,within_bound,seconds");
    const auto f = split(lines[1], ',');
    ASSERT_GE(f.size(), 9u);
    EXPECT_EQ(f[0], "units");
    EXPECT_EQ(f[5], "18");
}

TEST(Cli, RegimeMissWarnsOrFailsWhenStrict)
{
    const auto warn = cli("count --class units --d 2 --height 1.7320508", true);
    EXPECT_NE(warn.out.find("warning:"), std::string::npos);
    EXPECT_EQ(cli("count --class units --d 2 --height 1.7320508 --strict").code, 2);
}

TEST(Cli, CountJson)
{
    const auto r = cli("count --class all --d 2 --measure-bound 5 --format json --no-timing");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["class"], "M_atmost");
    EXPECT_EQ(j["error_bound"], "200000");
    EXPECT_EQ(j["within_bound"], true);
    EXPECT_EQ(j["seconds"], 0.0);
}

TEST(Cli, NegativeNorm)
{
    const auto r = cli("count --class norm --d 2 --norm -1 --measure-bound 3");
    EXPECT_EQ(r.code, 0);
    const auto f = split(split(r.out, '\n')[1], ',');
    EXPECT_EQ(f[2], "nu=-1");
    const auto s = cli("count --class reducible_norm --d 2 --norm -2 --measure-bound 6");
    EXPECT_EQ(s.code, 0);
}

TEST(Cli, ConstantsV15)
{
    const auto r = cli("constants --v 15");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("V(15),2658455991569831745807614120560689152/13904872587870848957579157123046875"),
              std::string::npos);
}

TEST(Cli, PreconditionExitCode)
{
    const auto r = cli("count --class units --d 1 --height 2", true);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("precondition violated"), std::string::npos);
    EXPECT_EQ(cli("count --class all --d 2").code, 2);
    EXPECT_EQ(cli("count --no-such-flag").code, 2);
    EXPECT_EQ(cli("geometry --op donut --d 3 --lead 1 --trail 1 --measure-bound 100 --samples 10").code, 2);
}

TEST(Cli, RefusalExitCode)
{
    const auto r = cli("count --class all --d 6 --measure-bound 50", true);
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("estimate"), std::string::npos);
}

TEST(Cli, CensusCsv)
{
    const auto r = cli("census --d 1 --height 3/2");
    EXPECT_EQ(r.code, 0);
    const auto lines = split(r.out, '\n');
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0], "degree,height,re,im,coeffs,measure");
}

TEST(Cli, VolumeJson)
{
    const auto r = cli("volume --d 2 --measure-bound 1 --samples 100000 --seed 3 --format json");
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const char* k : {"op", "params", "estimate", "stderr", "samples", "seed", "pass"}) EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j["pass"], true);
}

TEST(Cli, GeometryLine)
{
    const auto r = cli("geometry --op line --d 1 --axis 0 --anchor 0.5 --measure-bound 1");
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["estimate"]["components"], 1);
    EXPECT_EQ(j["pass"], true);
}

TEST(Cli, VerifyAppendix)
{
    const auto r = cli("verify --suite appendix");
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema"], "v1");
    EXPECT_EQ(j["suite"], "appendix");
    EXPECT_EQ(j["summary"]["pass"], true);
    EXPECT_EQ(j["summary"]["failed"], 0);
    EXPECT_EQ(cli("verify --suite nonsense").code, 2);
}

TEST(Cli, ByteIdenticalReruns)
{
    const std::string a = "verify --suite moebius --threads 1";
    const auto r1 = cli(a), r2 = cli(a), r8 = cli("verify --suite moebius --threads 8");
    EXPECT_EQ(r1.code, 0);
    EXPECT_EQ(r1.out, r2.out);
    EXPECT_EQ(r1.out, r8.out);
    const std::string v = "volume --d 3 --measure-bound 1 --samples 50000 --seed 9";
    EXPECT_EQ(cli(v + " --threads 1").out, cli(v + " --threads 8").out);
}
