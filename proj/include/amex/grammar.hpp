#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "amex/errors.hpp"

namespace amex {

// Context-free grammar over whitespace-free symbol tokens.  Nonterminals are
// exactly the symbols that appear as rule heads; the start symbol is the
// head of the first rule.
struct GrammarRule {
    std::string head;
    std::vector<std::string> replacement;
};

class Grammar {
public:
    explicit Grammar(std::vector<GrammarRule> rules);

    // Parses "HEAD -> sym sym ..." lines; '#' starts a comment.
    static Grammar parse(const std::string& text);
    static Grammar load(const std::string& path);

    // Grammar generating the Nguyen-suite equations in prefix notation;
    // used by the bundled equation-discovery environment.
    static const Grammar& builtin();

    const std::vector<GrammarRule>& rules() const { return rules_; }
    const std::string& start_symbol() const { return start_; }
    bool is_nonterminal(const std::string& sym) const { return heads_.count(sym) > 0; }

    // Indices of the rules whose head is `sym`, in grammar order.
    const std::vector<int>& rules_for(const std::string& sym) const;

private:
    std::vector<GrammarRule> rules_;
    std::string start_;
    std::unordered_map<std::string, std::vector<int>> heads_;
};

// Partially derived prefix expression: a symbol sequence plus the number of
// rule applications that produced it.
struct DerivationState {
    std::vector<std::string> symbols;
    int expansions_used = 0;
};

// Position of the leftmost nonterminal, -1 when the derivation is complete.
int leftmost_nonterminal(const DerivationState& state, const Grammar& grammar);

inline bool derivation_complete(const DerivationState& state, const Grammar& grammar) {
    return leftmost_nonterminal(state, grammar) < 0;
}

// Rules applicable to the leftmost nonterminal, in grammar order.
// Throws PreconditionViolation on a complete state.
std::vector<int> applicable_rules(const DerivationState& state, const Grammar& grammar);

// Replaces the leftmost nonterminal with the rule's replacement sequence.
// Throws RuleMismatch when the rule head does not match.
DerivationState apply_rule(const DerivationState& state, int rule_index, const Grammar& grammar);

std::string derivation_key(const DerivationState& state);

}  // namespace amex
