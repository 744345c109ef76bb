#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "amex/dot.hpp"
#include "amex/errors.hpp"
#include "amex/mdp.hpp"
#include "amex/rng.hpp"
#include "amex/search.hpp"

namespace amex {

// One benchmark episode result row.
struct RunRecord {
    std::string env;
    std::string variant;
    std::int64_t n_sims = 0;
    std::uint64_t seed = 0;
    double episode_return = 0.0;       // undiscounted sum of arrival rewards
    std::int64_t steps_taken = 0;
    std::int64_t unique_states = 0;    // union over the per-move searches
    double wall_ms = 0.0;
};

// Plays one episode with a fresh search per move.  The per-move search seed
// is derived from cfg.seed and the move index.
template <DeterministicMdp E>
RunRecord run_episode(const E& env, SearchConfig cfg, std::uint64_t seed_label = 0) {
    auto t0 = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.env = env.name();
    rec.variant = variant_name(cfg.variant);
    rec.n_sims = cfg.n_sims;
    rec.seed = seed_label;
    std::unordered_set<StateKey> unique;
    std::uint64_t base_seed = cfg.seed;
    typename E::State s = env.initial();
    int move = 0;
    while (!env.is_terminal(s) && env.action_count(s) > 0) {
        cfg.seed = mix_seed(base_seed, static_cast<std::uint64_t>(move));
        Search<E> search(env, s, cfg);
        auto result = search.run();
        for (const auto& node : search.tree().nodes) unique.insert(node.key);
        s = env.transition(s, result.policy.chosen_action);
        rec.episode_return += env.reward(s);
        ++rec.steps_taken;
        ++move;
    }
    rec.unique_states = static_cast<std::int64_t>(unique.size());
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rec;
}

// Cartesian sweep over variants x budgets x seeds.  The environment factory
// receives the seed index so seed-dependent environments (chain action
// assignments) stay matched across variants and budgets.
template <class EnvFactory>
std::vector<RunRecord> sweep(EnvFactory&& make_env, const std::vector<Variant>& variants,
                             const std::vector<std::int64_t>& budgets, int n_seeds,
                             SearchConfig base_cfg, std::uint64_t global_seed) {
    std::vector<RunRecord> records;
    for (Variant variant : variants) {
        for (std::int64_t n_sims : budgets) {
            for (int seed = 0; seed < n_seeds; ++seed) {
                auto env = make_env(static_cast<std::uint64_t>(seed));
                SearchConfig cfg = base_cfg;
                cfg.variant = variant;
                cfg.n_sims = n_sims;
                cfg.seed = mix_seed(global_seed, static_cast<std::uint64_t>(seed));
                records.push_back(
                    run_episode(env, cfg, static_cast<std::uint64_t>(seed)));
            }
        }
    }
    return records;
}

struct AggregateCell {
    std::string env;
    std::string variant;
    std::int64_t n_sims = 0;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation
    int n = 0;
};

std::vector<AggregateCell> aggregate_records(const std::vector<RunRecord>& records);
std::string format_aggregate_table(const std::vector<AggregateCell>& cells);

// CSV emission: header env,variant,n_sims,seed,episode_return,steps_taken,
// unique_states,wall_ms; floats printed with 6 decimals.
std::string records_to_csv(const std::vector<RunRecord>& records);
void write_csv(const std::vector<RunRecord>& records, const std::string& path);

// Exhaustive gamma-discounted max backup over the reachable subtree.
struct OracleResult {
    std::vector<double> action_values;  // value of T(s, a) per action
    std::vector<int> optimal_actions;
    double state_value = 0.0;
};

template <DeterministicMdp E>
class BruteForceOracle {
public:
    BruteForceOracle(const E& env, double gamma, std::int64_t max_states = 1000000)
        : env_(&env), gamma_(gamma), max_states_(max_states) {}

    double value(const typename E::State& s) {
        if (env_->is_terminal(s)) return env_->reward(s);
        StateKey key = env_->encode(s);
        auto it = memo_.find(key);
        if (it != memo_.end()) {
            if (std::isnan(it->second))
                throw BudgetExceeded("oracle: cycle through state " + key);
            return it->second;
        }
        if (static_cast<std::int64_t>(memo_.size()) >= max_states_)
            throw BudgetExceeded("oracle: more than " + std::to_string(max_states_) +
                                 " states");
        memo_[key] = std::numeric_limits<double>::quiet_NaN();  // in-progress marker
        int n = env_->action_count(s);
        double best = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < n; ++a) best = std::max(best, value(env_->transition(s, a)));
        double v = env_->reward(s) + gamma_ * best;
        memo_[key] = v;
        return v;
    }

private:
    const E* env_;
    double gamma_;
    std::int64_t max_states_;
    std::unordered_map<StateKey, double> memo_;
};

template <DeterministicMdp E>
OracleResult brute_force_values(const E& env, const typename E::State& s, double gamma,
                                std::int64_t max_states = 1000000) {
    if (env.is_terminal(s))
        throw PreconditionViolation("oracle: queried state is terminal");
    BruteForceOracle<E> oracle(env, gamma, max_states);
    OracleResult result;
    int n = env.action_count(s);
    result.action_values.reserve(static_cast<std::size_t>(n));
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a) {
        double v = oracle.value(env.transition(s, a));
        result.action_values.push_back(v);
        best = std::max(best, v);
    }
    for (int a = 0; a < n; ++a) {
        double v = result.action_values[static_cast<std::size_t>(a)];
        if (std::abs(v - best) <= 1e-12 * std::max(1.0, std::abs(best)))
            result.optimal_actions.push_back(a);
    }
    result.state_value = env.reward(s) + gamma * best;
    return result;
}

std::string format_oracle_table(const OracleResult& result);

// A single search from the initial state plus its DOT snapshot.
struct CoverageStats {
    SearchStats search;
    std::int64_t closed_nodes = 0;
};

template <DeterministicMdp E>
std::pair<CoverageStats, std::string> coverage_report(const E& env, const SearchConfig& cfg) {
    Search<E> search(env, env.initial(), cfg);
    auto result = search.run();
    CoverageStats stats;
    stats.search = result.stats;
    stats.closed_nodes = result.stats.closed_terminal + result.stats.closed_transposition +
                         result.stats.closed_complete;
    return {stats, to_dot(search.tree(), cfg.variant)};
}

}  // namespace amex
