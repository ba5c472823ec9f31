#include "jrh/cli/commands.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace jrh;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("jrh_test_" + std::to_string(::getpid()) + "_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_binary(const std::string& args) {
    std::string cmd = std::string(JRH_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

TEST(Config, RoundTrip) {
    RunConfig c;
    c.command = "zeros";
    c.A = Rational(-7, 10);
    c.alpha = parse_rational("-70+1e-5+1e-10");
    c.n = 37;
    c.prec_bits = 192;
    c.tol = 1e-25;
    c.out = "somewhere";
    c.levels = {-0.1, 0.05};
    c.ns = {10, 20};
    c.points = {"1.5,-2"};
    c.seed = 99;
    RunConfig back = parse_config(dump_config(c));
    EXPECT_EQ(dump_config(back), dump_config(c));
    EXPECT_EQ(*back.alpha, *c.alpha);
    EXPECT_FALSE(back.B.has_value());
    EXPECT_THROW(parse_config("{not json"), InvalidInput);
    EXPECT_THROW(parse_config(R"({"A": "x"})"), InvalidInput);
}

TEST(Config, EnvironmentOverrides) {
    RunConfig c;
    ::setenv("JRH_A", "-3/4", 1);
    ::setenv("JRH_N", "12", 1);
    ::setenv("JRH_LEVELS", "0.1,0.2", 1);
    apply_environment(c);
    EXPECT_EQ(*c.A, Rational(-3, 4));
    EXPECT_EQ(c.n, 12);
    ASSERT_EQ(c.levels.size(), 2u);
    ::setenv("JRH_N", "12x", 1);
    EXPECT_THROW(apply_environment(c), InvalidInput);
    ::unsetenv("JRH_A");
    ::unsetenv("JRH_N");
    ::unsetenv("JRH_LEVELS");
}

TEST(Commands, ZerosAreDeterministic) {
    auto d1 = scratch("det1"), d2 = scratch("det2");
    RunConfig c;
    c.command = "zeros";
    c.n = 12;
    c.A = Rational(-7, 10);
    c.B = Rational(-8, 10) + Rational(1, 1000);
    c.out = d1.string();
    auto r1 = cli::run_command(c);
    c.out = d2.string();
    auto r2 = cli::run_command(c);
    ASSERT_EQ(r1.files.size(), r2.files.size());
    for (size_t i = 0; i < r1.files.size(); ++i) {
        auto name = fs::path(r1.files[i]).filename();
        if (name == "config.json") continue;
        EXPECT_EQ(slurp(r1.files[i]), slurp(d2 / name)) << name;
    }
    EXPECT_TRUE(fs::exists(d1 / "config.json"));
    EXPECT_FALSE(fs::exists(d1 / ".jrh.lock"));
    // the written configuration reproduces the run
    RunConfig again = parse_config(slurp(d1 / "config.json"));
    EXPECT_EQ(again.n, 12);
    EXPECT_EQ(*again.B, *c.B);
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST(Commands, ValidationWritesNothing) {
    auto dir = scratch("invalid");
    RunConfig c;
    c.command = "geometry";
    c.A = Rational(1, 2);
    c.out = dir.string();
    try {
        cli::run_command(c);
        FAIL() << "expected a validation error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Validation);
    }
    EXPECT_FALSE(fs::exists(dir));
    c.command = "nonsense";
    EXPECT_THROW(cli::run_command(c), InvalidInput);
}

TEST(Commands, LockIsRespected) {
    auto dir = scratch("lock");
    fs::create_directories(dir);
    std::ofstream(dir / ".jrh.lock") << "1\n";
    RunConfig c;
    c.command = "zeros";
    c.n = 4;
    c.alpha = Rational(-27, 10);
    c.beta = Rational(-31, 10);
    c.out = dir.string();
    EXPECT_THROW(cli::run_command(c), LockHeld);
    EXPECT_FALSE(fs::exists(dir / "config.json"));
    fs::remove(dir / ".jrh.lock");
    EXPECT_NO_THROW(cli::run_command(c));
    EXPECT_TRUE(fs::exists(dir / "config.json"));
    fs::remove_all(dir);
}

TEST(Commands, ZerosOfDegreeOne) {
    auto dir = scratch("n1");
    RunConfig c;
    c.command = "zeros";
    c.n = 1;
    c.A = Rational(-7, 10);
    c.B = Rational(-8, 10);
    c.out = dir.string();
    // alpha, beta and alpha+beta are fractional at n = 1
    auto r = cli::run_command(c);
    EXPECT_EQ(r.summary["n"], 1);
    fs::remove_all(dir);
}

TEST(Commands, ConvergeNotesResonance) {
    auto dir = scratch("conv");
    RunConfig c;
    c.command = "converge";
    c.A = Rational(-7, 10);
    c.B = Rational(-8, 10);
    c.ns = {41, 42};
    c.points = {"6,0.4"};
    c.out = dir.string();
    auto r = cli::run_command(c);
    const auto& rows = r.summary["rows"];
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_TRUE(rows[0]["note"].get<std::string>().empty());
    EXPECT_LT(rows[0]["rel_err"].get<double>(), 0.05);
    // (A+B) 42 = -63
    EXPECT_NE(rows[1]["note"].get<std::string>().find("IntegerResonance"), std::string::npos);
    EXPECT_TRUE(rows[1]["rel_err"].is_null());
    fs::remove_all(dir);
}

TEST(Binary, ExitCodes) {
    auto dir = scratch("bin");
    EXPECT_EQ(run_binary("zeros --n 6 --A -0.7 --B -0.79 --out " + dir.string()), 0);
    EXPECT_TRUE(fs::exists(dir / "config.json"));
    EXPECT_EQ(run_binary("geometry --A 0.5 --out " + dir.string() + "_bad"), 2);
    EXPECT_FALSE(fs::exists(dir.string() + "_bad"));
    EXPECT_EQ(run_binary("zeros --bogus 1"), 2);
    EXPECT_EQ(run_binary("zeros --n 6 --alpha abc --out " + dir.string()), 2);
    // (A+B) n = -3 at n = 2
    EXPECT_EQ(run_binary("asym --A -0.7 --B -0.8 --n 2 --z 6,0.4 --out " + dir.string() + "_res"), 3);
    fs::remove_all(dir);
}
