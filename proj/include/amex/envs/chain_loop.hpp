#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "amex/errors.hpp"
#include "amex/mdp.hpp"
#include "amex/rng.hpp"

namespace amex {

// Chain variant that restarts instead of terminating on a wrong action.
// Every step burns one unit of the horizon; the state therefore carries
// steps_remaining so values stay well defined under the induced cycles.
class ChainLoopEnv {
public:
    struct State {
        int position = 0;
        int steps_remaining = 0;
    };

    ChainLoopEnv(int k, int horizon, std::vector<int> correct_actions)
        : k_(k), horizon_(horizon), correct_(std::move(correct_actions)) {
        if (k_ < 1 || static_cast<int>(correct_.size()) != k_)
            throw PreconditionViolation("chainloop: need one correct action per position");
        if (horizon_ < 1) throw PreconditionViolation("chainloop: horizon must be positive");
        for (int a : correct_)
            if (a != 0 && a != 1) throw PreconditionViolation("chainloop: actions are binary");
    }

    static ChainLoopEnv seeded(int k, int horizon, std::uint64_t seed) {
        std::mt19937_64 rng(splitmix64(seed));
        std::vector<int> correct(static_cast<std::size_t>(k));
        for (auto& a : correct) a = static_cast<int>(rng() & 1u);
        return ChainLoopEnv(k, horizon, std::move(correct));
    }

    std::string name() const { return "chainloop"; }
    int k() const { return k_; }
    int horizon() const { return horizon_; }
    int correct_action(int position) const { return correct_[static_cast<std::size_t>(position)]; }

    State initial() const { return State{0, horizon_}; }

    bool is_terminal(const State& s) const { return s.position == k_ || s.steps_remaining == 0; }

    int action_count(const State& s) const { return is_terminal(s) ? 0 : 2; }

    State transition(const State& s, int a) const {
        if (is_terminal(s)) throw PreconditionViolation("chainloop: transition from terminal state");
        if (a != 0 && a != 1) throw PreconditionViolation("chainloop: bad action");
        if (a == correct_[static_cast<std::size_t>(s.position)])
            return State{s.position + 1, s.steps_remaining - 1};
        return State{0, s.steps_remaining - 1};
    }

    double reward(const State& s) const { return s.position == k_ ? 1.0 : 0.0; }

    StateKey encode(const State& s) const {
        return "p" + std::to_string(s.position) + "t" + std::to_string(s.steps_remaining);
    }

private:
    int k_;
    int horizon_;
    std::vector<int> correct_;
};

}  // namespace amex
