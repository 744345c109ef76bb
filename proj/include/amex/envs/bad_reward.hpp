#pragma once

#include <string>

#include "amex/errors.hpp"
#include "amex/mdp.hpp"

namespace amex {

// Deliberately violating environment: a three-state line whose middle
// (non-terminal) state pays a negative reward.  Exists to exercise the
// reward-sign guard end to end.
class BadRewardEnv {
public:
    using State = int;  // 0 -> 1 -> 2 (terminal)

    std::string name() const { return "badreward"; }

    State initial() const { return 0; }
    bool is_terminal(const State& s) const { return s >= 2; }
    int action_count(const State& s) const { return is_terminal(s) ? 0 : 1; }

    State transition(const State& s, int a) const {
        if (is_terminal(s)) throw PreconditionViolation("badreward: transition from terminal");
        if (a != 0) throw PreconditionViolation("badreward: bad action");
        return s + 1;
    }

    double reward(const State& s) const {
        if (s == 1) return -0.1;  // the violation
        return s == 2 ? 1.0 : 0.0;
    }

    StateKey encode(const State& s) const { return std::to_string(s); }
};

}  // namespace amex
