#pragma once

#include <concepts>
#include <string>

namespace amex {

// Canonical byte encoding of an environment state.  Encodings double as
// transposition-table keys, so they must be injective on reachable states.
using StateKey = std::string;

// Contract for a deterministic single-player MDP.
//
// Requirements beyond the signatures:
//  - transition/reward are pure: equal inputs give equal outputs;
//  - encode is injective on reachable states;
//  - reward(s) >= 0 for every non-terminal s (terminal rewards may be
//    negative);
//  - action_count(s) == 0 exactly when is_terminal(s).
template <typename E>
concept DeterministicMdp = requires(const E& env, const typename E::State& s, int a) {
    typename E::State;
    { env.initial() } -> std::same_as<typename E::State>;
    { env.action_count(s) } -> std::same_as<int>;
    { env.transition(s, a) } -> std::same_as<typename E::State>;
    { env.reward(s) } -> std::same_as<double>;
    { env.is_terminal(s) } -> std::same_as<bool>;
    { env.encode(s) } -> std::same_as<StateKey>;
    { env.name() } -> std::convertible_to<std::string>;
};

}  // namespace amex
