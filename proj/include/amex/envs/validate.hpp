#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_set>
#include <vector>

#include "amex/errors.hpp"
#include "amex/mdp.hpp"

namespace amex {

// Breadth-first enumeration of distinct reachable states (by encoding).
// Throws BudgetExceeded once more than max_states distinct states appear.
template <DeterministicMdp E>
std::vector<typename E::State> enumerate_reachable(const E& env, std::int64_t max_states) {
    std::vector<typename E::State> out;
    std::unordered_set<StateKey> seen;
    std::deque<typename E::State> frontier;
    frontier.push_back(env.initial());
    seen.insert(env.encode(frontier.back()));
    while (!frontier.empty()) {
        typename E::State s = std::move(frontier.front());
        frontier.pop_front();
        out.push_back(s);
        if (static_cast<std::int64_t>(out.size()) > max_states)
            throw BudgetExceeded(env.name() + ": more than " + std::to_string(max_states) +
                                 " reachable states");
        int n = env.action_count(s);
        for (int a = 0; a < n; ++a) {
            typename E::State next = env.transition(s, a);
            if (seen.insert(env.encode(next)).second) frontier.push_back(std::move(next));
        }
    }
    return out;
}

// Checks reward(s) >= 0 on every non-terminal reachable state, visiting at
// most exhaustive_bound states.  State spaces larger than the bound pass the
// enumerated prefix here and rely on the in-search spot check for the rest.
template <DeterministicMdp E>
void validate_rewards(const E& env, std::int64_t exhaustive_bound) {
    std::unordered_set<StateKey> seen;
    std::deque<typename E::State> frontier;
    frontier.push_back(env.initial());
    seen.insert(env.encode(frontier.back()));
    std::int64_t visited = 0;
    while (!frontier.empty() && visited < exhaustive_bound) {
        typename E::State s = std::move(frontier.front());
        frontier.pop_front();
        ++visited;
        if (!env.is_terminal(s) && env.reward(s) < 0.0)
            throw RewardSignViolation(env.name() + ": negative reward at non-terminal state " +
                                      env.encode(s));
        int n = env.action_count(s);
        for (int a = 0; a < n; ++a) {
            typename E::State next = env.transition(s, a);
            if (seen.insert(env.encode(next)).second) frontier.push_back(std::move(next));
        }
    }
}

}  // namespace amex
