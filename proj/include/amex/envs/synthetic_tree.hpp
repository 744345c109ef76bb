#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "amex/errors.hpp"
#include "amex/mdp.hpp"
#include "amex/rng.hpp"

namespace amex {

// Complete b-ary tree of depth D with seeded leaf rewards in [0,1) and zero
// interior rewards.  States are action-index paths, so every state is reached
// by exactly one path and the search tree never sees a transposition.
class SyntheticTreeEnv {
public:
    using State = std::string;  // one digit per action taken

    SyntheticTreeEnv(int branching, int depth, std::uint64_t seed)
        : branching_(branching), depth_(depth) {
        if (branching_ < 1 || branching_ > 9)
            throw PreconditionViolation("synthetic: branching must be in [1,9]");
        if (depth_ < 1) throw PreconditionViolation("synthetic: depth must be positive");
        std::uint64_t leaves = 1;
        for (int d = 0; d < depth_; ++d) {
            leaves *= static_cast<std::uint64_t>(branching_);
            if (leaves > (1u << 24))
                throw PreconditionViolation("synthetic: too many leaves");
        }
        std::mt19937_64 rng(splitmix64(seed));
        leaf_rewards_.resize(leaves);
        for (auto& r : leaf_rewards_)
            r = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }

    std::string name() const { return "synthetic"; }
    int branching() const { return branching_; }
    int depth() const { return depth_; }

    State initial() const { return {}; }

    bool is_terminal(const State& s) const { return static_cast<int>(s.size()) == depth_; }

    int action_count(const State& s) const { return is_terminal(s) ? 0 : branching_; }

    State transition(const State& s, int a) const {
        if (is_terminal(s)) throw PreconditionViolation("synthetic: transition from leaf");
        if (a < 0 || a >= branching_) throw PreconditionViolation("synthetic: bad action");
        State next = s;
        next.push_back(static_cast<char>('0' + a));
        return next;
    }

    double reward(const State& s) const {
        if (!is_terminal(s)) return 0.0;
        return leaf_rewards_[leaf_index(s)];
    }

    StateKey encode(const State& s) const { return s; }

private:
    std::size_t leaf_index(const State& s) const {
        std::size_t idx = 0;
        for (char c : s) idx = idx * static_cast<std::size_t>(branching_) +
                                static_cast<std::size_t>(c - '0');
        return idx;
    }

    int branching_;
    int depth_;
    std::vector<double> leaf_rewards_;
};

}  // namespace amex
