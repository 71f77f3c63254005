#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct CliRun {
    std::string out;
    int status = -1;
};

CliRun run(const std::string& args)
{
    std::string cmd = std::string(QGW_BINARY) + " " + args + " 2>&1";
    CliRun r;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f)
        return r;
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0)
        r.out.append(buf.data(), n);
    int st = pclose(f);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

}  // namespace

TEST(Cli, OutputIsDeterministic)
{
    for (const char* args : {"build --builtin a1-spin32 --format record", "minpoly --builtin a1-spin32 --format record",
                             "report --builtin a1-spin32 --format record", "relations --builtin a1-vector"}) {
        CliRun a = run(args), b = run(args);
        EXPECT_EQ(a.status, 0) << args << "\n" << a.out;
        EXPECT_EQ(a.out, b.out) << args;
        EXPECT_FALSE(a.out.empty());
    }
}

TEST(Cli, RecordOutputParses)
{
    CliRun r = run("normalize --builtin a1-spin32 --format record");
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_TRUE(nlohmann::json::accept(r.out));
}

TEST(Cli, QuarterPowersInText)
{
    CliRun r = run("minpoly --builtin a1-spin32");
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("q^{-15/2}"), std::string::npos) << r.out;
}

TEST(Cli, CheckExitStatus)
{
    EXPECT_EQ(run("check --builtin a1-vector --qybe --frt-condition").status, 0);
    EXPECT_NE(run("check --builtin a1-vector --identity-suite").status, 0);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run("build --builtin no-such-module").status, 3);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("build --module /nonexistent.json").status, 3);
}
