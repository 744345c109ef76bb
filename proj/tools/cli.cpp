#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "amex/dot.hpp"
#include "amex/envs/bad_reward.hpp"
#include "amex/envs/chain.hpp"
#include "amex/envs/chain_loop.hpp"
#include "amex/envs/frozen_lake.hpp"
#include "amex/envs/synthetic_tree.hpp"
#include "amex/grammar_env.hpp"
#include "amex/harness.hpp"
#include "amex/search.hpp"

namespace amex::cli {

namespace {

constexpr std::uint64_t kEnvSalt = 0xe12af5e9u;

std::uint64_t global_seed_default() {
    const char* v = std::getenv("AMEX_SEED");
    if (!v || !*v) return 0;
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0')
        throw UsageError(std::string("AMEX_SEED is not an unsigned integer: '") + v + "'");
    return static_cast<std::uint64_t>(parsed);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<std::int64_t> parse_budget_list(const std::vector<std::string>& items) {
    std::vector<std::int64_t> out;
    for (const std::string& s : items) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(s, &used);
            if (used != s.size() || v < 1) throw std::invalid_argument(s);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("--n-sims: '" + s + "' is not a positive integer");
        }
    }
    return out;
}

void validate_env_params(const CliConfig& cfg) {
    bool chainlike = cfg.env == "chain" || cfg.env == "chainloop";
    if (chainlike && !cfg.k) throw UsageError("--k is required for --env " + cfg.env);
    if (!chainlike && cfg.k) throw UsageError("--k only applies to chain/chainloop");
    if (cfg.horizon && cfg.env != "chainloop" && cfg.env != "frozenlake")
        throw UsageError("--horizon only applies to chainloop/frozenlake");
    if (!cfg.map_file.empty() && cfg.env != "frozenlake")
        throw UsageError("--map only applies to frozenlake");
    if ((!cfg.grammar_file.empty() || !cfg.dataset_file.empty()) && cfg.env != "grammar")
        throw UsageError("--grammar/--dataset only apply to grammar");
    bool synthetic = cfg.env == "synthetic";
    if (synthetic && (!cfg.branching || !cfg.depth))
        throw UsageError("--b and --depth are required for --env synthetic");
    if (!synthetic && (cfg.branching || cfg.depth))
        throw UsageError("--b/--depth only apply to synthetic");
    if (cfg.k && *cfg.k < 1) throw UsageError("--k must be >= 1");
    if (cfg.horizon && *cfg.horizon < 1) throw UsageError("--horizon must be >= 1");
    if (cfg.variants.empty()) throw UsageError("--variant is required");
    if (cfg.n_sims.empty()) throw UsageError("--n-sims is required");
    if (cfg.command != "sweep") {
        if (cfg.variants.size() != 1)
            throw UsageError("--variant takes a single value for " + cfg.command);
        if (cfg.n_sims.size() != 1)
            throw UsageError("--n-sims takes a single value for " + cfg.command);
    }
    for (const std::string& v : cfg.variants) variant_from_name(v);  // validates
}

SearchConfig base_search_config(const CliConfig& cfg) {
    SearchConfig sc;
    sc.c = cfg.c;
    sc.gamma = cfg.effective_gamma();
    sc.rollout_cap = cfg.rollout_cap;
    sc.n_sims = cfg.n_sims.front();
    sc.variant = variant_from_name(cfg.variants.front());
    sc.validate();
    return sc;
}

// Dispatches on the env name once and hands `f` a factory mapping a seed
// index to an environment instance.  Seed-dependent environments derive
// their internal seed from the global seed, so matched seed indices see
// identical environments across variants and budgets.
template <class F>
int with_env_factory(const CliConfig& cfg, F&& f) {
    std::uint64_t salt = cfg.global_seed ^ kEnvSalt;
    if (cfg.env == "chain") {
        int k = *cfg.k;
        return f([k, salt](std::uint64_t i) { return ChainEnv::seeded(k, mix_seed(salt, i)); });
    }
    if (cfg.env == "chainloop") {
        int k = *cfg.k;
        int horizon = cfg.horizon ? *cfg.horizon : k;
        return f([k, horizon, salt](std::uint64_t i) {
            return ChainLoopEnv::seeded(k, horizon, mix_seed(salt, i));
        });
    }
    if (cfg.env == "frozenlake") {
        int horizon = cfg.horizon ? *cfg.horizon : 400;
        FrozenLakeEnv env = cfg.map_file.empty()
                                ? FrozenLakeEnv::standard(horizon)
                                : FrozenLakeEnv::from_map_file(cfg.map_file, horizon);
        return f([env](std::uint64_t) { return env; });
    }
    if (cfg.env == "grammar") {
        Grammar grammar =
            cfg.grammar_file.empty() ? Grammar::builtin() : Grammar::load(cfg.grammar_file);
        Dataset data = cfg.dataset_file.empty() ? sqrt_x0_dataset()
                                                : load_dataset_csv(cfg.dataset_file);
        GrammarEnv env(std::move(grammar), std::move(data), cfg.max_expansions);
        return f([env](std::uint64_t) { return env; });
    }
    if (cfg.env == "synthetic") {
        int b = *cfg.branching;
        int d = *cfg.depth;
        return f([b, d, salt](std::uint64_t i) {
            return SyntheticTreeEnv(b, d, mix_seed(salt, i));
        });
    }
    if (cfg.env == "badreward")
        return f([](std::uint64_t) { return BadRewardEnv(); });
    throw UsageError("unknown --env '" + cfg.env + "'");
}

int cmd_run(const CliConfig& cfg) {
    SearchConfig base = base_search_config(cfg);
    return with_env_factory(cfg, [&](auto make_env) {
        std::vector<RunRecord> records;
        for (int seed = 0; seed < cfg.seeds; ++seed) {
            auto env = make_env(static_cast<std::uint64_t>(seed));
            SearchConfig sc = base;
            sc.seed = mix_seed(cfg.global_seed, static_cast<std::uint64_t>(seed));
            records.push_back(run_episode(env, sc, static_cast<std::uint64_t>(seed)));
        }
        if (cfg.no_timing)
            for (RunRecord& r : records) r.wall_ms = 0.0;
        std::cout << records_to_csv(records);
        if (!cfg.out_path.empty()) write_csv(records, cfg.out_path);
        return 0;
    });
}

int cmd_sweep(const CliConfig& cfg) {
    SearchConfig base = base_search_config(cfg);
    std::vector<Variant> variants;
    for (const std::string& v : cfg.variants) variants.push_back(variant_from_name(v));
    return with_env_factory(cfg, [&](auto make_env) {
        std::vector<RunRecord> records =
            sweep(make_env, variants, cfg.n_sims, cfg.seeds, base, cfg.global_seed);
        if (cfg.no_timing)
            for (RunRecord& r : records) r.wall_ms = 0.0;
        std::cout << format_aggregate_table(aggregate_records(records));
        if (!cfg.out_path.empty()) write_csv(records, cfg.out_path);
        return 0;
    });
}

int cmd_coverage(const CliConfig& cfg) {
    SearchConfig sc = base_search_config(cfg);
    sc.seed = mix_seed(cfg.global_seed, 0);
    return with_env_factory(cfg, [&](auto make_env) {
        auto env = make_env(0);
        auto [stats, dot] = coverage_report(env, sc);
        std::cout << "env:                  " << cfg.env << "\n"
                  << "variant:              " << cfg.variants.front() << "\n"
                  << "n_sims:               " << sc.n_sims << "\n"
                  << "iterations_used:      " << stats.search.iterations << "\n"
                  << "tree_nodes:           " << stats.search.tree_nodes << "\n"
                  << "unique_states:        " << stats.search.unique_keys << "\n"
                  << "closed_nodes:         " << stats.closed_nodes << "\n"
                  << "closed_terminal:      " << stats.search.closed_terminal << "\n"
                  << "closed_transposition: " << stats.search.closed_transposition << "\n"
                  << "closed_complete:      " << stats.search.closed_complete << "\n"
                  << "early_return:         " << (stats.search.early_return ? "yes" : "no")
                  << "\n";
        if (stats.search.best_terminal_reward >
            -std::numeric_limits<double>::infinity()) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6f", stats.search.best_terminal_reward);
            std::cout << "best_terminal_reward: " << buf << "\n";
        }
        if (!cfg.dot_path.empty()) {
            std::ofstream out(cfg.dot_path);
            if (!out) throw IoError(cfg.dot_path + ": cannot open for writing");
            out << dot;
            if (!out) throw IoError(cfg.dot_path + ": write failed");
        }
        return 0;
    });
}

int cmd_oracle(const CliConfig& cfg) {
    double gamma = cfg.effective_gamma();
    return with_env_factory(cfg, [&](auto make_env) {
        auto env = make_env(0);
        OracleResult result = brute_force_values(env, env.initial(), gamma);
        std::cout << format_oracle_table(result);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9f", result.state_value);
        std::cout << "state_value," << buf << "\n";
        std::cout << "optimal_actions,";
        for (std::size_t i = 0; i < result.optimal_actions.size(); ++i)
            std::cout << (i ? " " : "") << result.optimal_actions[i];
        std::cout << "\n";
        return 0;
    });
}

void add_common_options(CLI::App* sub, CliConfig& cfg, std::string& variant_arg,
                        std::string& n_sims_arg) {
    sub->add_option("--env", cfg.env,
                    "Environment: chain|chainloop|frozenlake|grammar|synthetic|badreward")
        ->required();
    sub->add_option("--k", cfg.k, "Chain length (chain/chainloop)");
    sub->add_option("--horizon", cfg.horizon,
                    "Step budget (chainloop: default k; frozenlake: default 400)");
    sub->add_option("--map", cfg.map_file, "FrozenLake map file (lines of S/F/H/G)");
    sub->add_option("--grammar", cfg.grammar_file, "Grammar file (HEAD -> sym sym ... lines)");
    sub->add_option("--dataset", cfg.dataset_file, "Dataset CSV with header x0,x1,y");
    sub->add_option("--b", cfg.branching, "Synthetic tree branching factor");
    sub->add_option("--depth", cfg.depth, "Synthetic tree depth");
    sub->add_option("--variant", variant_arg,
                    "Search variant: classical|amex|amexmax (comma list for sweep)");
    sub->add_option("--n-sims", n_sims_arg,
                    "Simulation budget per move (comma list for sweep)");
    sub->add_option("--seeds", cfg.seeds, "Number of seeds, run as 0..seeds-1")
        ->check(CLI::PositiveNumber);
    sub->add_option("--C", cfg.c, "UCT exploration constant")->check(CLI::PositiveNumber);
    sub->add_option("--gamma", cfg.gamma,
                    "Discount factor in (0,1] (default 1.0; frozenlake 0.99)");
    sub->add_option("--rollout-cap", cfg.rollout_cap, "Maximum rollout depth")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-expansions", cfg.max_expansions,
                    "Grammar derivation expansion cap")
        ->check(CLI::PositiveNumber);
    sub->add_option("--global-seed", cfg.global_seed,
                    "Global seed (default 0; AMEX_SEED overrides the default)");
    sub->add_flag("--no-timing", cfg.no_timing, "Report wall_ms as 0 for byte-stable output");
}

}  // namespace

double CliConfig::effective_gamma() const {
    if (gamma) return *gamma;
    return env == "frozenlake" ? 0.99 : 1.0;
}

std::optional<CliConfig> parse_args(const std::vector<std::string>& args) {
    CliConfig cfg;
    cfg.global_seed = global_seed_default();
    std::string variant_arg;
    std::string n_sims_arg;

    CLI::App app{"Monte-Carlo tree search benchmarks: classical MCTS and the AmEx variants"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Key=value file under a [run]/[sweep]/[coverage]/[oracle] section; "
                   "flags override");
    CLI::App* run = app.add_subcommand("run", "Play full episodes, one search per move");
    CLI::App* sw = app.add_subcommand("sweep", "Cartesian sweep over variants x budgets x seeds");
    CLI::App* cov = app.add_subcommand("coverage", "Single search from the initial state");
    CLI::App* orc = app.add_subcommand("oracle", "Exhaustive per-action values at the start");
    for (CLI::App* sub : {run, sw, cov, orc}) {
        sub->configurable(true);
        sub->fallthrough(true);
        add_common_options(sub, cfg, variant_arg, n_sims_arg);
    }
    run->add_option("--out", cfg.out_path, "CSV output path");
    sw->add_option("--out", cfg.out_path, "CSV output path");
    cov->add_option("--dot", cfg.dot_path, "DOT snapshot output path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);  // CLI11 consumes a reversed argument vector
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);  // prints the requested help text
        return std::nullopt;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.command == "oracle") {
        if (variant_arg.empty()) variant_arg = "amex";  // unused by the oracle
        if (n_sims_arg.empty()) n_sims_arg = "1";
    }
    cfg.variants = split_list(variant_arg);
    cfg.n_sims = parse_budget_list(split_list(n_sims_arg));
    validate_env_params(cfg);
    return cfg;
}

int dispatch(const CliConfig& cfg) {
    if (cfg.command == "run") return cmd_run(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg);
    if (cfg.command == "coverage") return cmd_coverage(cfg);
    if (cfg.command == "oracle") return cmd_oracle(cfg);
    throw UsageError("unknown command '" + cfg.command + "'");
}

int cli_main(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        std::optional<CliConfig> cfg = parse_args(args);
        if (!cfg) return 0;  // --help
        return dispatch(*cfg);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace amex::cli
