#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "amex/errors.hpp"
#include "cli.hpp"

using namespace amex;

namespace {

std::optional<cli::CliConfig> parse(std::initializer_list<std::string> args) {
    return cli::parse_args(std::vector<std::string>(args));
}

int run_cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"amex-bench"};
    argv.insert(argv.end(), args.begin(), args.end());
    return cli::cli_main(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("parse_args accepts the documented run invocation") {
    auto cfg = parse({"run", "--env", "chain", "--k", "10", "--variant", "amex", "--n-sims",
                      "64", "--seeds", "25", "--out", "r.csv"});
    REQUIRE(cfg.has_value());
    CHECK(cfg->command == "run");
    CHECK(cfg->env == "chain");
    CHECK(cfg->k == 10);
    CHECK(cfg->variants == std::vector<std::string>{"amex"});
    CHECK(cfg->n_sims == std::vector<std::int64_t>{64});
    CHECK(cfg->seeds == 25);
    CHECK(cfg->out_path == "r.csv");
    CHECK(cfg->effective_gamma() == 1.0);
}

TEST_CASE("parse_args rejects a chain run without --k") {
    CHECK_THROWS_AS(parse({"run", "--env", "chain", "--variant", "amex", "--n-sims", "8"}),
                    UsageError);
}

TEST_CASE("parse_args expands sweep lists") {
    auto cfg = parse({"sweep", "--env", "frozenlake", "--variant", "amex,classical", "--n-sims",
                      "16,64,256", "--seeds", "25", "--gamma", "0.99", "--out", "sweep.csv"});
    REQUIRE(cfg.has_value());
    CHECK(cfg->variants == std::vector<std::string>{"amex", "classical"});
    CHECK(cfg->n_sims == std::vector<std::int64_t>{16, 64, 256});
    CHECK(cfg->seeds == 25);
    CHECK(cfg->effective_gamma() == 0.99);
    // 2 x 3 x 25 = 150 cells.
    CHECK(cfg->variants.size() * cfg->n_sims.size() * static_cast<std::size_t>(cfg->seeds) ==
          150);
}

TEST_CASE("parse_args flags inconsistent parameter combinations") {
    CHECK_THROWS_AS(parse({"run", "--env", "frozenlake", "--k", "4", "--variant", "amex",
                           "--n-sims", "4"}),
                    UsageError);
    CHECK_THROWS_AS(parse({"run", "--env", "synthetic", "--variant", "amex", "--n-sims", "4"}),
                    UsageError);
    CHECK_THROWS_AS(parse({"run", "--env", "chain", "--k", "3", "--variant", "frobnicate",
                           "--n-sims", "4"}),
                    UsageError);
    CHECK_THROWS_AS(parse({"run", "--env", "chain", "--k", "3", "--variant", "amex,classical",
                           "--n-sims", "4"}),
                    UsageError);
    CHECK_THROWS_AS(parse({"run", "--env", "chain", "--k", "3", "--variant", "amex",
                           "--n-sims", "0"}),
                    UsageError);
}

TEST_CASE("cli exit codes: help 0, usage 2, runtime 1") {
    CHECK(run_cli({"--help"}) == 0);
    CHECK(run_cli({"run", "--help"}) == 0);
    CHECK(run_cli({"run", "--env", "chain", "--variant", "amex", "--n-sims", "4"}) == 2);
    CHECK(run_cli({"run", "--unknown-flag"}) == 2);
    CHECK(run_cli({}) == 2);
    // Reward-sign violation surfaces as a runtime failure (exit 1).
    CHECK(run_cli({"run", "--env", "badreward", "--variant", "amex", "--n-sims", "4"}) == 1);
}

TEST_CASE("run command writes deterministic CSV with --no-timing") {
    const char* out1 = "test_cli_run1.csv";
    const char* out2 = "test_cli_run2.csv";
    int rc1 = run_cli({"run", "--env", "chain", "--k", "4", "--variant", "amex", "--n-sims",
                       "16", "--seeds", "3", "--no-timing", "--out", out1});
    int rc2 = run_cli({"run", "--env", "chain", "--k", "4", "--variant", "amex", "--n-sims",
                       "16", "--seeds", "3", "--no-timing", "--out", out2});
    CHECK(rc1 == 0);
    CHECK(rc2 == 0);
    CHECK(slurp(out1) == slurp(out2));
    std::string csv = slurp(out1);
    CHECK(csv.find("env,variant,n_sims,seed,episode_return") == 0);
    CHECK(csv.find("chain,amex,16,0,") != std::string::npos);
    std::remove(out1);
    std::remove(out2);
}

TEST_CASE("coverage command writes a DOT snapshot") {
    const char* dot_path = "test_cli_tree.dot";
    int rc = run_cli({"coverage", "--env", "chain", "--k", "2", "--variant", "amex", "--n-sims",
                      "4", "--dot", dot_path});
    CHECK(rc == 0);
    std::string dot = slurp(dot_path);
    CHECK(dot.find("digraph search {") == 0);
    CHECK(dot.find("->") != std::string::npos);
    std::remove(dot_path);
}

TEST_CASE("oracle command runs on a synthetic tree") {
    CHECK(run_cli({"oracle", "--env", "synthetic", "--b", "2", "--depth", "3"}) == 0);
}

TEST_CASE("config file supplies defaults, flags override") {
    const char* conf = "test_cli_conf.ini";
    {
        std::ofstream out(conf);
        out << "[run]\nenv=chain\nk=3\nvariant=amex\nn-sims=8\nseeds=2\nno-timing=true\n";
    }
    const char* out1 = "test_cli_conf_out.csv";
    int rc = run_cli({"run", "--config", conf, "--out", out1});
    CHECK(rc == 0);
    std::string csv = slurp(out1);
    CHECK(csv.find("chain,amex,8,1,") != std::string::npos);
    // Flag overrides the file value.
    const char* out2 = "test_cli_conf_out2.csv";
    int rc2 = run_cli({"run", "--config", conf, "--n-sims", "4", "--out", out2});
    CHECK(rc2 == 0);
    CHECK(slurp(out2).find("chain,amex,4,1,") != std::string::npos);
    std::remove(conf);
    std::remove(out1);
    std::remove(out2);
}

TEST_CASE("AMEX_SEED overrides the default global seed") {
    setenv("AMEX_SEED", "99", 1);
    auto cfg = parse({"run", "--env", "chain", "--k", "2", "--variant", "amex", "--n-sims", "2"});
    REQUIRE(cfg.has_value());
    CHECK(cfg->global_seed == 99);
    setenv("AMEX_SEED", "not-a-number", 1);
    CHECK_THROWS_AS(parse({"run", "--env", "chain", "--k", "2", "--variant", "amex", "--n-sims",
                           "2"}),
                    UsageError);
    unsetenv("AMEX_SEED");
    auto cfg2 = parse({"run", "--env", "chain", "--k", "2", "--variant", "amex", "--n-sims",
                       "2", "--global-seed", "7"});
    REQUIRE(cfg2.has_value());
    CHECK(cfg2->global_seed == 7);
}
