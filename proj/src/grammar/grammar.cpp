#include "amex/grammar.hpp"

#include <fstream>
#include <sstream>

namespace amex {

namespace {

const char* kBuiltinGrammar = R"(
Start -> 2
Start -> 1
Start -> 0.5
Start -> + Start Start
Start -> - Start Start
Start -> * Start Start
Start -> sin InnerFunction
Start -> cos InnerFunction
Start -> log InnerFunction
Start -> Variable
Start -> ^ Exponent Variable
Exponent -> 6
Exponent -> 5
Exponent -> 4
Exponent -> 3
Exponent -> 2
Exponent -> 0.5
Exponent -> x1
InnerFunction -> ^ Exponent Variable
InnerFunction -> x0
InnerFunction -> x1
InnerFunction -> + Sum Sum
Sum -> ^ Exponent Variable
Sum -> 1
Sum -> x0
Sum -> x1
Variable -> x0
Variable -> x1
)";

}  // namespace

Grammar::Grammar(std::vector<GrammarRule> rules) : rules_(std::move(rules)) {
    if (rules_.empty()) throw PreconditionViolation("grammar: no rules");
    start_ = rules_.front().head;
    for (int i = 0; i < static_cast<int>(rules_.size()); ++i) {
        const GrammarRule& r = rules_[static_cast<std::size_t>(i)];
        if (r.head.empty() || r.replacement.empty())
            throw PreconditionViolation("grammar: empty rule head or replacement");
        heads_[r.head].push_back(i);
    }
}

Grammar Grammar::parse(const std::string& text) {
    std::vector<GrammarRule> rules;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head, arrow, sym;
        if (!(ls >> head)) continue;  // blank line
        if (!(ls >> arrow) || arrow != "->")
            throw IoError("grammar line " + std::to_string(line_no) + ": expected 'HEAD -> ...'");
        GrammarRule rule;
        rule.head = head;
        while (ls >> sym) rule.replacement.push_back(sym);
        if (rule.replacement.empty())
            throw IoError("grammar line " + std::to_string(line_no) + ": empty replacement");
        rules.push_back(std::move(rule));
    }
    return Grammar(std::move(rules));
}

Grammar Grammar::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open grammar file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const Grammar& Grammar::builtin() {
    static const Grammar g = Grammar::parse(kBuiltinGrammar);
    return g;
}

const std::vector<int>& Grammar::rules_for(const std::string& sym) const {
    auto it = heads_.find(sym);
    if (it == heads_.end())
        throw PreconditionViolation("grammar: '" + sym + "' is not a nonterminal");
    return it->second;
}

int leftmost_nonterminal(const DerivationState& state, const Grammar& grammar) {
    for (int i = 0; i < static_cast<int>(state.symbols.size()); ++i)
        if (grammar.is_nonterminal(state.symbols[static_cast<std::size_t>(i)])) return i;
    return -1;
}

std::vector<int> applicable_rules(const DerivationState& state, const Grammar& grammar) {
    int pos = leftmost_nonterminal(state, grammar);
    if (pos < 0) throw PreconditionViolation("applicable_rules: derivation is complete");
    return grammar.rules_for(state.symbols[static_cast<std::size_t>(pos)]);
}

DerivationState apply_rule(const DerivationState& state, int rule_index, const Grammar& grammar) {
    if (rule_index < 0 || rule_index >= static_cast<int>(grammar.rules().size()))
        throw RuleMismatch("apply_rule: rule index out of range");
    int pos = leftmost_nonterminal(state, grammar);
    if (pos < 0) throw RuleMismatch("apply_rule: derivation is complete");
    const GrammarRule& rule = grammar.rules()[static_cast<std::size_t>(rule_index)];
    if (state.symbols[static_cast<std::size_t>(pos)] != rule.head)
        throw RuleMismatch("apply_rule: rule head '" + rule.head +
                           "' does not match leftmost nonterminal '" +
                           state.symbols[static_cast<std::size_t>(pos)] + "'");
    DerivationState next;
    next.symbols.reserve(state.symbols.size() + rule.replacement.size() - 1);
    next.symbols.insert(next.symbols.end(), state.symbols.begin(),
                        state.symbols.begin() + pos);
    next.symbols.insert(next.symbols.end(), rule.replacement.begin(), rule.replacement.end());
    next.symbols.insert(next.symbols.end(), state.symbols.begin() + pos + 1,
                        state.symbols.end());
    next.expansions_used = state.expansions_used + 1;
    return next;
}

std::string derivation_key(const DerivationState& state) {
    std::string out;
    for (std::size_t i = 0; i < state.symbols.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += state.symbols[i];
    }
    return out;
}

}  // namespace amex
