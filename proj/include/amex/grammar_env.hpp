#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "amex/dataset.hpp"
#include "amex/expression.hpp"
#include "amex/grammar.hpp"
#include "amex/mdp.hpp"

namespace amex {

// Reward of a terminal derivation state: clamp(1 - MSE, -1, 1) for a complete
// equation that evaluates finitely on every row, -1 otherwise (incomplete at
// the expansion cap, domain errors).
double grammar_reward(const DerivationState& state, const Grammar& grammar, const Dataset& data,
                      int max_expansions);

// Equation discovery as a deterministic MDP: states are partial derivations,
// actions apply one of the leftmost nonterminal's rules.
class GrammarEnv {
public:
    using State = DerivationState;

    GrammarEnv(Grammar grammar, Dataset data, int max_expansions = 25)
        : grammar_(std::move(grammar)), data_(std::move(data)), max_expansions_(max_expansions) {
        if (max_expansions_ < 1)
            throw PreconditionViolation("grammar env: max_expansions must be positive");
        data_.validate();
    }

    static GrammarEnv standard(int max_expansions = 25) {
        return GrammarEnv(Grammar::builtin(), sqrt_x0_dataset(), max_expansions);
    }

    std::string name() const { return "grammar"; }
    const Grammar& grammar() const { return grammar_; }
    const Dataset& dataset() const { return data_; }
    int max_expansions() const { return max_expansions_; }

    State initial() const { return State{{grammar_.start_symbol()}, 0}; }

    bool is_terminal(const State& s) const {
        return derivation_complete(s, grammar_) || s.expansions_used >= max_expansions_;
    }

    int action_count(const State& s) const {
        if (is_terminal(s)) return 0;
        return static_cast<int>(applicable_rules(s, grammar_).size());
    }

    State transition(const State& s, int a) const {
        if (is_terminal(s))
            throw PreconditionViolation("grammar env: transition from terminal state");
        std::vector<int> rules = applicable_rules(s, grammar_);
        if (a < 0 || a >= static_cast<int>(rules.size()))
            throw PreconditionViolation("grammar env: bad action");
        return apply_rule(s, rules[static_cast<std::size_t>(a)], grammar_);
    }

    double reward(const State& s) const {
        if (!is_terminal(s)) return 0.0;
        return grammar_reward(s, grammar_, data_, max_expansions_);
    }

    StateKey encode(const State& s) const { return derivation_key(s); }

private:
    Grammar grammar_;
    Dataset data_;
    int max_expansions_;
};

inline double grammar_reward(const DerivationState& state, const Grammar& grammar,
                             const Dataset& data, int max_expansions) {
    if (!derivation_complete(state, grammar)) {
        if (state.expansions_used < max_expansions)
            throw PreconditionViolation("grammar_reward: state is not terminal");
        return -1.0;  // ran out of expansions before completing the equation
    }
    double sq_sum = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::optional<double> v = evaluate_prefix(state.symbols, data.x0[i], data.x1[i]);
        if (!v) return -1.0;
        double err = *v - data.y[i];
        sq_sum += err * err;
        if (!std::isfinite(sq_sum)) return -1.0;
    }
    double mse = sq_sum / static_cast<double>(data.size());
    return std::clamp(1.0 - mse, -1.0, 1.0);
}

}  // namespace amex
