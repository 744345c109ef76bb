#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "amex/errors.hpp"
#include "amex/mdp.hpp"
#include "amex/rng.hpp"

namespace amex {

// Chain task: pick the correct one of two actions k times in a row.
// A wrong action ends the episode with reward 0; reaching position k pays 1.
class ChainEnv {
public:
    struct State {
        int position = 0;
        bool dead = false;
    };

    ChainEnv(int k, std::vector<int> correct_actions)
        : k_(k), correct_(std::move(correct_actions)) {
        if (k_ < 1 || static_cast<int>(correct_.size()) != k_)
            throw PreconditionViolation("chain: need one correct action per position");
        for (int a : correct_)
            if (a != 0 && a != 1) throw PreconditionViolation("chain: actions are binary");
    }

    static ChainEnv seeded(int k, std::uint64_t seed) {
        std::mt19937_64 rng(splitmix64(seed));
        std::vector<int> correct(static_cast<std::size_t>(k));
        for (auto& a : correct) a = static_cast<int>(rng() & 1u);
        return ChainEnv(k, std::move(correct));
    }

    static ChainEnv fixed(int k, int action) {
        return ChainEnv(k, std::vector<int>(static_cast<std::size_t>(k), action));
    }

    std::string name() const { return "chain"; }
    int k() const { return k_; }
    int correct_action(int position) const { return correct_[static_cast<std::size_t>(position)]; }

    State initial() const { return State{}; }

    bool is_terminal(const State& s) const { return s.dead || s.position == k_; }

    int action_count(const State& s) const { return is_terminal(s) ? 0 : 2; }

    State transition(const State& s, int a) const {
        if (is_terminal(s)) throw PreconditionViolation("chain: transition from terminal state");
        if (a != 0 && a != 1) throw PreconditionViolation("chain: bad action");
        if (a == correct_[static_cast<std::size_t>(s.position)])
            return State{s.position + 1, false};
        return State{s.position, true};
    }

    double reward(const State& s) const { return (!s.dead && s.position == k_) ? 1.0 : 0.0; }

    StateKey encode(const State& s) const {
        return s.dead ? std::to_string(s.position) + "d" : std::to_string(s.position);
    }

private:
    int k_;
    std::vector<int> correct_;
};

}  // namespace amex
