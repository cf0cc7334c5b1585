#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

#include "microgrid/cli.hpp"
#include "support.hpp"

using namespace microgrid;
using testing_support::read_file;
using testing_support::source_path;
using testing_support::temp_dir;
using testing_support::write_text;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args) {
    args.insert(args.begin(), "microgrid");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

/// Clears the output-dir override for the duration of a test.
struct EnvGuard {
    EnvGuard() { unsetenv(kOutDirEnv); }
    ~EnvGuard() { unsetenv(kOutDirEnv); }
};

}  // namespace

TEST(Cli, BaselineMatchesPublishedFigures) {
    EnvGuard g;
    const auto dir = temp_dir("cli_baseline");
    auto r = cli({"baseline", "--config", source_path("scenarios/baseline.json"), "--out", dir});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "microgrid baseline scenario=")) << r.out;
    EXPECT_TRUE(contains(r.out, "lcoe=0.1600")) << r.out;
    auto j = nlohmann::json::parse(read_file(dir + "/summary.json"));
    EXPECT_NEAR(j["economics"]["operating_cost"].get<double>(), 141573, 141573 * 0.001);
    EXPECT_NEAR(j["economics"]["npc"].get<double>(), 1.81e6, 0.02e6);
    EXPECT_EQ(j["economics"]["lcoe"].get<double>(), 0.16);
    EXPECT_TRUE(std::filesystem::exists(dir + "/emissions.json"));
}

TEST(Cli, SimulateWritesReportsAndSeedHeader) {
    EnvGuard g;
    const auto dir = temp_dir("cli_simulate");
    auto r = cli({"simulate", "--config", source_path("scenarios/scenario1.json"), "--out", dir, "--seed", "99",
                  "--strategy", "cc"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "seed=99 strategy=cc")) << r.out;
    EXPECT_TRUE(contains(r.out, "output_dir=" + dir));
    auto j = nlohmann::json::parse(read_file(dir + "/summary.json"));
    EXPECT_EQ(j["header"]["seed"], 99);
    EXPECT_EQ(j["header"]["strategy"], "cc");
}

TEST(Cli, OptimizeRanksCandidates) {
    EnvGuard g;
    const auto dir = temp_dir("cli_optimize");
    auto r = cli({"optimize", "--config", source_path("scenarios/optimize_small.json"), "--out", dir, "--workers",
                  "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "evaluated=27"));
    EXPECT_TRUE(std::filesystem::exists(dir + "/ranked.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir + "/rejected.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir + "/ranked.json"));
}

TEST(Cli, InfeasibleOptimizationExitsThree) {
    EnvGuard g;
    const auto dir = temp_dir("cli_infeasible");
    write_text(dir + "/cfg.json", R"({"name": "none", "constraints": {"max_unmet_fraction": 0},
        "search": {"n_pv": [0, 10], "n_batt": [0]}})");
    auto r = cli({"optimize", "--config", dir + "/cfg.json", "--out", dir + "/out"});
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(contains(r.err, "class=infeasible")) << r.err;
    EXPECT_EQ(read_file(dir + "/out/ranked.csv").find('\n') + 1, read_file(dir + "/out/ranked.csv").size());
}

TEST(Cli, OptimizeWithoutSearchIsConfigError) {
    EnvGuard g;
    const auto dir = temp_dir("cli_nosearch");
    auto r = cli({"optimize", "--config", source_path("scenarios/scenario1.json"), "--out", dir});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.err, "class=config field=search")) << r.err;
}

TEST(Cli, ConfigErrorsExitTwoAndNameField) {
    EnvGuard g;
    const auto dir = temp_dir("cli_badcfg");
    write_text(dir + "/cfg.json", R"({"fleet": {"n_batt": -4}})");
    auto r = cli({"simulate", "--config", dir + "/cfg.json", "--out", dir});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.err, "error: class=config field=fleet.n_batt message=")) << r.err;

    auto missing = cli({"simulate", "--config", dir + "/absent.json"});
    EXPECT_EQ(missing.code, 2);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"fly", "--config", "x"}).code, 2);
    auto r = cli({"simulate", "--config", "x", "--strategy", "greedy"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.err, "class=usage"));
    EXPECT_EQ(cli({"simulate", "--config", "x", "--workers", "0"}).code, 2);
    EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, RuntimeFailureExitsOne) {
    EnvGuard g;
    const auto dir = temp_dir("cli_runtime");
    write_text(dir + "/blocker", "x");
    auto r = cli({"baseline", "--config", source_path("scenarios/baseline.json"), "--out", dir + "/blocker/sub"});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.err, "class=runtime")) << r.err;
}

TEST(Cli, NasaWithoutNetworkFlagIsOfflineError) {
    EnvGuard g;
    const auto dir = temp_dir("cli_offline");
    write_text(dir + "/cfg.json", R"({"resources": {"source": "nasa"}})");
    auto r = cli({"synth", "--config", dir + "/cfg.json", "--out", dir});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.err, "class=offline")) << r.err;
}

TEST(Cli, OutputDirectoryPrecedence) {
    EnvGuard g;
    const auto dir = temp_dir("cli_precedence");
    write_text(dir + "/cfg.json", R"({"output_dir": ")" + dir + R"(/from_config"})");

    auto a = cli({"synth", "--config", dir + "/cfg.json"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_TRUE(std::filesystem::exists(dir + "/from_config/load.csv"));

    setenv(kOutDirEnv, (dir + "/from_env").c_str(), 1);
    auto b = cli({"synth", "--config", dir + "/cfg.json"});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_TRUE(std::filesystem::exists(dir + "/from_env/load.csv"));

    auto c = cli({"synth", "--config", dir + "/cfg.json", "--out", dir + "/from_flag"});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_TRUE(std::filesystem::exists(dir + "/from_flag/load.csv"));
}

TEST(Cli, SynthIsDeterministicPerSeed) {
    EnvGuard g;
    const auto dir = temp_dir("cli_synth");
    const auto cfg = source_path("scenarios/scenario1.json");
    ASSERT_EQ(cli({"synth", "--config", cfg, "--out", dir + "/a", "--seed", "5"}).code, 0);
    ASSERT_EQ(cli({"synth", "--config", cfg, "--out", dir + "/b", "--seed", "5"}).code, 0);
    ASSERT_EQ(cli({"synth", "--config", cfg, "--out", dir + "/c", "--seed", "6"}).code, 0);
    EXPECT_EQ(read_file(dir + "/a/ghi.csv"), read_file(dir + "/b/ghi.csv"));
    EXPECT_NE(read_file(dir + "/a/ghi.csv"), read_file(dir + "/c/ghi.csv"));
}

TEST(CliBinary, ExitCodesFromProcess) {
    const auto dir = temp_dir("cli_binary");
    const std::string bin = MICROGRID_CLI_PATH;
    auto status = [](const std::string& cmd) {
        int s = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status(bin + " simulate --config " + source_path("scenarios/scenario4.json") + " --out " + dir), 0);
    EXPECT_EQ(status(bin + " simulate"), 2);
    EXPECT_TRUE(std::filesystem::exists(dir + "/hourly.csv"));
}
