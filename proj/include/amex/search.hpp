#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "amex/errors.hpp"
#include "amex/mdp.hpp"
#include "amex/rng.hpp"

namespace amex {

enum class Variant { Classical, AmEx, AmExMax };

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::Classical: return "classical";
        case Variant::AmEx: return "amex";
        case Variant::AmExMax: return "amexmax";
    }
    return "?";
}

inline Variant variant_from_name(const std::string& s) {
    if (s == "classical") return Variant::Classical;
    if (s == "amex") return Variant::AmEx;
    if (s == "amexmax") return Variant::AmExMax;
    throw UsageError("unknown variant '" + s + "' (expected classical|amex|amexmax)");
}

enum class NodeStatus { Open, ClosedTerminal, ClosedTransposition, ClosedComplete };

inline const char* status_name(NodeStatus s) {
    switch (s) {
        case NodeStatus::Open: return "open";
        case NodeStatus::ClosedTerminal: return "terminal";
        case NodeStatus::ClosedTransposition: return "transposition";
        case NodeStatus::ClosedComplete: return "complete";
    }
    return "?";
}

struct SearchConfig {
    Variant variant = Variant::AmEx;
    double c = std::numbers::sqrt2;  // UCT exploration constant
    double gamma = 1.0;
    std::int64_t n_sims = 1;
    int rollout_cap = 512;
    std::uint64_t seed = 0;
    bool record_trace = false;
    // Called with (q_before, q_after) on every count-preserving W rescale.
    std::function<void(double, double)> rescale_audit;

    void validate() const {
        if (!(c > 0.0)) throw PreconditionViolation("config: C must be positive");
        if (!(gamma > 0.0 && gamma <= 1.0))
            throw PreconditionViolation("config: gamma must lie in (0, 1]");
        if (n_sims < 1) throw PreconditionViolation("config: n_sims must be >= 1");
        if (rollout_cap < 1) throw PreconditionViolation("config: rollout_cap must be >= 1");
    }
};

// UCT selection score.  Unvisited children score +infinity so they are
// expanded before any visited sibling is re-entered.
inline double uct_score(double q, std::int64_t n_child, std::int64_t n_parent, double c) {
    if (n_child == 0) return std::numeric_limits<double>::infinity();
    if (n_parent < 1) throw PreconditionViolation("uct_score: parent visit count must be >= 1");
    return q + c * std::sqrt(std::log(static_cast<double>(n_parent)) /
                             static_cast<double>(n_child));
}

template <DeterministicMdp E>
struct SearchNode {
    typename E::State state;
    StateKey key;
    int parent = -1;            // node index, -1 for the root
    int action_from_parent = -1;
    int action_count = 0;       // |A(state)|
    double W = 0.0;             // accumulated reward
    std::int64_t N_c = 0;       // MCTS-aligned visit count
    std::int64_t N_p = 0;       // real-selection count
    double q_max = -std::numeric_limits<double>::infinity();
    NodeStatus status = NodeStatus::Open;
    std::vector<int> children;       // per action; -1 until expanded; empty until opened
    std::vector<char> action_open;   // per action; nonzero while not completely explored
    int open_count = 0;

    bool opened() const { return !children.empty() || action_count == 0; }
    double mean_q() const { return W / static_cast<double>(N_c); }
};

// Q-value read per variant: running mean for Classical/AmEx, running max for
// AmExMax.
template <DeterministicMdp E>
double node_q(const SearchNode<E>& n, Variant variant) {
    if (variant == Variant::AmExMax) {
        if (n.q_max == -std::numeric_limits<double>::infinity())
            throw PreconditionViolation("node_q: q_max not initialized");
        return n.q_max;
    }
    if (n.N_c < 1) throw PreconditionViolation("node_q: unvisited node");
    return n.mean_q();
}

template <DeterministicMdp E>
struct SearchTree {
    std::vector<SearchNode<E>> nodes;
    // Values of states already backed up somewhere in the tree; reset per run.
    std::unordered_map<StateKey, double> transpositions;

    int size() const { return static_cast<int>(nodes.size()); }
    SearchNode<E>& operator[](int i) { return nodes[static_cast<std::size_t>(i)]; }
    const SearchNode<E>& operator[](int i) const { return nodes[static_cast<std::size_t>(i)]; }
};

struct PathStep {
    int node;
    int a_select;  // argmax UCT over still-open actions; the edge followed
    int a_max;     // argmax UCT over all actions; the edge classical MCTS takes
};

template <DeterministicMdp E>
struct SelectionOutcome {
    std::vector<PathStep> path;
    int leaf = -1;                               // set once the leaf node exists
    std::optional<typename E::State> pending;    // state of a leaf not yet in the tree
};

struct Policy {
    std::vector<double> action_weights;  // over root actions, sums to 1
    int chosen_action = -1;
};

struct IterationRecord {
    StateKey leaf_key;
    double value;
};

struct SearchStats {
    std::int64_t iterations = 0;
    std::int64_t tree_nodes = 0;
    std::int64_t unique_keys = 0;
    std::int64_t closed_terminal = 0;
    std::int64_t closed_transposition = 0;
    std::int64_t closed_complete = 0;
    std::int64_t backprop_steps = 0;
    double best_terminal_reward = -std::numeric_limits<double>::infinity();
    bool early_return = false;
    std::vector<IterationRecord> trace;
};

// Uniform-random playout from a freshly opened leaf, discounting arrival
// rewards by gamma per step.  Paths that outlive the cap contribute nothing
// beyond it.
template <DeterministicMdp E, class Rng>
double rollout_value(const E& env, typename E::State s, double gamma, int cap, Rng& rng,
                     SearchStats* stats = nullptr) {
    double value = 0.0;
    double disc = 1.0;
    for (int step = 0; step < cap; ++step) {
        int n = env.action_count(s);
        int a = static_cast<int>(draw_index(rng, static_cast<std::size_t>(n)));
        s = env.transition(s, a);
        disc *= gamma;
        double rw = env.reward(s);
        if (env.is_terminal(s)) {
            value += disc * rw;
            if (stats) stats->best_terminal_reward = std::max(stats->best_terminal_reward, rw);
            return value;
        }
        if (rw < 0.0)
            throw RewardSignViolation("negative reward at non-terminal state " + env.encode(s));
        value += disc * rw;
    }
    return value;
}

template <DeterministicMdp E>
class Search {
public:
    using State = typename E::State;
    using Node = SearchNode<E>;
    using Outcome = SelectionOutcome<E>;

    struct RunResult {
        Policy policy;
        SearchStats stats;
    };

    Search(const E& env, State root_state, SearchConfig cfg)
        : env_(&env), cfg_(std::move(cfg)), rng_(cfg_.seed) {
        cfg_.validate();
        if (env.is_terminal(root_state) || env.action_count(root_state) < 1)
            throw PreconditionViolation("run_search: root state is terminal");
        add_node(std::move(root_state), -1, -1);
        open_node(0);
    }

    RunResult run() {
        for (std::int64_t i = 1; i <= cfg_.n_sims; ++i) {
            Outcome out = select_path();
            double r = expand_and_simulate(out);
            backpropagate(out, r);
            stats_.iterations = i;
            if (cfg_.record_trace)
                stats_.trace.push_back({tree_[out.leaf].key, r});
            if (tree_[0].status == NodeStatus::ClosedComplete) {
                stats_.early_return = true;
                break;
            }
        }
        finalize_stats();
        Policy policy = stats_.early_return ? early_policy() : extract_policy();
        return RunResult{std::move(policy), stats_};
    }

    // Descends from the root along argmax-UCT open actions.  Stops at the
    // first action whose child is missing from the tree (normal case) or at a
    // closed child (re-reached terminal, Classical only).
    Outcome select_path() {
        if (tree_[0].status != NodeStatus::Open)
            throw PreconditionViolation("select: root is closed");
        Outcome out;
        int idx = 0;
        for (;;) {
            Node& node = tree_[idx];
            if (node.open_count == 0)
                throw InvariantViolation("select: open node without open actions: " + node.key);
            int n = node.action_count;
            uct_buf_.assign(static_cast<std::size_t>(n), 0.0);
            double best_open = -std::numeric_limits<double>::infinity();
            double best_all = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < n; ++a) {
                int ch = node.children[static_cast<std::size_t>(a)];
                double u = ch < 0 ? std::numeric_limits<double>::infinity()
                                  : uct_score(q_for_uct(tree_[ch]), tree_[ch].N_c, node.N_p,
                                              cfg_.c);
                uct_buf_[static_cast<std::size_t>(a)] = u;
                best_all = std::max(best_all, u);
                if (node.action_open[static_cast<std::size_t>(a)])
                    best_open = std::max(best_open, u);
            }
            ties_buf_.clear();
            for (int a = 0; a < n; ++a)
                if (node.action_open[static_cast<std::size_t>(a)] &&
                    uct_buf_[static_cast<std::size_t>(a)] == best_open)
                    ties_buf_.push_back(a);
            int a_select = ties_buf_.size() == 1
                               ? ties_buf_[0]
                               : ties_buf_[draw_index(rng_, ties_buf_.size())];
            int a_max = a_select;
            if (uct_buf_[static_cast<std::size_t>(a_select)] < best_all) {
                for (int a = 0; a < n; ++a) {
                    if (uct_buf_[static_cast<std::size_t>(a)] == best_all) {
                        a_max = a;
                        break;
                    }
                }
            }
            out.path.push_back(PathStep{idx, a_select, a_max});
            int ch = node.children[static_cast<std::size_t>(a_select)];
            if (ch < 0) {
                out.pending = env_->transition(node.state, a_select);
                return out;
            }
            if (tree_[ch].status != NodeStatus::Open) {
                if (cfg_.variant != Variant::Classical)
                    throw InvariantViolation("select: entered a closed child: " + tree_[ch].key);
                out.leaf = ch;
                return out;
            }
            idx = ch;
        }
    }

    // Adds the pending leaf to the tree (when new) and produces its value:
    // a stored transposition value, the terminal reward, or a rollout.
    double expand_and_simulate(Outcome& out) {
        if (out.leaf >= 0) {
            // Closed node re-reached; only Classical selection gets here.
            Node& node = tree_[out.leaf];
            double r = env_->reward(node.state);
            stats_.best_terminal_reward = std::max(stats_.best_terminal_reward, r);
            return r;
        }
        if (!out.pending || out.path.empty())
            throw PreconditionViolation("expand: outcome carries no pending leaf");
        const PathStep& last = out.path.back();
        State s = std::move(*out.pending);
        out.pending.reset();
        int idx = add_node(std::move(s), last.node, last.a_select);
        tree_[last.node].children[static_cast<std::size_t>(last.a_select)] = idx;
        out.leaf = idx;
        Node& leaf = tree_[idx];
        if (cfg_.variant != Variant::Classical) {
            auto it = tree_.transpositions.find(leaf.key);
            if (it != tree_.transpositions.end()) {
                leaf.status = NodeStatus::ClosedTransposition;
                return it->second;
            }
        }
        if (leaf.action_count == 0 || env_->is_terminal(leaf.state)) {
            leaf.status = NodeStatus::ClosedTerminal;
            double r = env_->reward(leaf.state);
            stats_.best_terminal_reward = std::max(stats_.best_terminal_reward, r);
            return r;
        }
        if (env_->reward(leaf.state) < 0.0)
            throw RewardSignViolation("negative reward at non-terminal state " + leaf.key);
        open_node(idx);
        return rollout_value(*env_, leaf.state, cfg_.gamma, cfg_.rollout_cap, rng_, &stats_);
    }

    // Decoupled backup.  The leaf absorbs its own visit; ascending frames
    // credit N_p along the selected path, N_c along the classical (a_max)
    // path with a Q-preserving rescale, clamp the value against the a_max
    // child, refresh the transposition entry, and close completely explored
    // nodes with a max backup.
    void backpropagate(const Outcome& out, double r) {
        Node& leaf = tree_[out.leaf];
        leaf.W += r;
        leaf.N_c += 1;
        if (cfg_.variant == Variant::AmExMax) leaf.q_max = std::max(leaf.q_max, r);
        for (int j = static_cast<int>(out.path.size()) - 1; j >= 0; --j) {
            ++stats_.backprop_steps;
            const PathStep& step = out.path[static_cast<std::size_t>(j)];
            Node& s = tree_[step.node];
            r *= cfg_.gamma;
            int cs_i = s.children[static_cast<std::size_t>(step.a_select)];
            int cm_i = s.children[static_cast<std::size_t>(step.a_max)];
            if (cm_i != cs_i) {
                if (cm_i < 0 || tree_[cm_i].N_c < 1)
                    throw InvariantViolation("backprop: a_max child has no visits");
                double qm = tree_[cm_i].mean_q();
                if (r < qm) r = qm;  // do not worsen the parent's average
            }
            Node& cs = tree_[cs_i];
            cs.N_p += 1;
            if (cm_i != cs_i) {
                rescale_preserving(tree_[cm_i]);
            } else if (cs_i != out.leaf) {
                if (cs.status == NodeStatus::Open) {
                    cs.N_c += 1;  // W already took r at the child's own frame
                } else {
                    // Child completed at its own frame this iteration; its
                    // value is the engineered max backup and must persist.
                    rescale_preserving(cs);
                }
            }
            if (cfg_.variant != Variant::Classical)
                tree_.transpositions[cs.key] = cs.mean_q();
            s.W += r;
            if (cfg_.variant == Variant::AmExMax) s.q_max = std::max(s.q_max, r);
            if (cfg_.variant != Variant::Classical && cs.status != NodeStatus::Open) {
                if (!s.action_open[static_cast<std::size_t>(step.a_select)])
                    throw InvariantViolation("backprop: selected action was already closed");
                s.action_open[static_cast<std::size_t>(step.a_select)] = 0;
                s.open_count -= 1;
                if (s.open_count == 0) complete_node(s);
            }
            if (j == 0) {
                s.N_p += 1;
                s.N_c += 1;
            }
        }
    }

    // Visit-count-proportional policy used when the budget runs out.
    Policy extract_policy() {
        const Node& root = tree_[0];
        Policy p;
        p.action_weights.assign(static_cast<std::size_t>(root.action_count), 0.0);
        double total = 0.0;
        for (int a = 0; a < root.action_count; ++a) {
            int ch = root.children[static_cast<std::size_t>(a)];
            if (ch >= 0) {
                p.action_weights[static_cast<std::size_t>(a)] =
                    static_cast<double>(tree_[ch].N_c);
                total += p.action_weights[static_cast<std::size_t>(a)];
            }
        }
        if (total <= 0.0) throw InvariantViolation("policy: no visited root child");
        for (auto& w : p.action_weights) w /= total;
        p.chosen_action = argmax_with_ties(p.action_weights);
        return p;
    }

    // One-hot policy on the best child Q once the tree is completely explored.
    Policy early_policy() {
        const Node& root = tree_[0];
        std::vector<double> q(static_cast<std::size_t>(root.action_count));
        for (int a = 0; a < root.action_count; ++a) {
            int ch = root.children[static_cast<std::size_t>(a)];
            if (ch < 0 || tree_[ch].N_c < 1)
                throw InvariantViolation("policy: completed root with unvisited child");
            q[static_cast<std::size_t>(a)] = tree_[ch].mean_q();
        }
        Policy p;
        p.action_weights.assign(static_cast<std::size_t>(root.action_count), 0.0);
        p.chosen_action = argmax_with_ties(q);
        p.action_weights[static_cast<std::size_t>(p.chosen_action)] = 1.0;
        return p;
    }

    SearchTree<E>& tree() { return tree_; }
    const SearchTree<E>& tree() const { return tree_; }
    const E& env() const { return *env_; }
    const SearchConfig& config() const { return cfg_; }
    std::mt19937_64& rng() { return rng_; }
    SearchStats& stats() { return stats_; }

private:
    double q_for_uct(const Node& n) const {
        return cfg_.variant == Variant::AmExMax ? n.q_max : n.mean_q();
    }

    int add_node(State s, int parent, int action) {
        SearchNode<E> node;
        node.key = env_->encode(s);
        node.action_count = env_->action_count(s);
        node.state = std::move(s);
        node.parent = parent;
        node.action_from_parent = action;
        tree_.nodes.push_back(std::move(node));
        return tree_.size() - 1;
    }

    void open_node(int idx) {
        Node& n = tree_[idx];
        n.children.assign(static_cast<std::size_t>(n.action_count), -1);
        n.action_open.assign(static_cast<std::size_t>(n.action_count), 1);
        n.open_count = n.action_count;
    }

    void rescale_preserving(Node& n) {
        double q_before = n.mean_q();
        n.N_c += 1;
        n.W = n.W * static_cast<double>(n.N_c) / static_cast<double>(n.N_c - 1);
        if (cfg_.rescale_audit) cfg_.rescale_audit(q_before, n.mean_q());
    }

    void complete_node(Node& s) {
        s.status = NodeStatus::ClosedComplete;
        double best = -std::numeric_limits<double>::infinity();
        double best_qmax = -std::numeric_limits<double>::infinity();
        for (int ch : s.children) {
            if (ch < 0 || tree_[ch].N_c < 1)
                throw InvariantViolation("complete: unvisited child under a completed node");
            best = std::max(best, tree_[ch].mean_q());
            best_qmax = std::max(best_qmax, tree_[ch].q_max);
        }
        s.W = cfg_.gamma * static_cast<double>(s.N_c) * best;
        if (cfg_.variant == Variant::AmExMax) s.q_max = cfg_.gamma * best_qmax;
    }

    int argmax_with_ties(const std::vector<double>& v) {
        double best = -std::numeric_limits<double>::infinity();
        for (double x : v) best = std::max(best, x);
        ties_buf_.clear();
        for (int i = 0; i < static_cast<int>(v.size()); ++i)
            if (v[static_cast<std::size_t>(i)] == best) ties_buf_.push_back(i);
        return ties_buf_.size() == 1 ? ties_buf_[0]
                                     : ties_buf_[draw_index(rng_, ties_buf_.size())];
    }

    void finalize_stats() {
        stats_.tree_nodes = tree_.size();
        std::unordered_set<StateKey> keys;
        keys.reserve(tree_.nodes.size());
        for (const Node& n : tree_.nodes) {
            keys.insert(n.key);
            switch (n.status) {
                case NodeStatus::ClosedTerminal: ++stats_.closed_terminal; break;
                case NodeStatus::ClosedTransposition: ++stats_.closed_transposition; break;
                case NodeStatus::ClosedComplete: ++stats_.closed_complete; break;
                case NodeStatus::Open: break;
            }
        }
        stats_.unique_keys = static_cast<std::int64_t>(keys.size());
    }

    const E* env_;
    SearchConfig cfg_;
    std::mt19937_64 rng_;
    SearchTree<E> tree_;
    SearchStats stats_;
    std::vector<double> uct_buf_;
    std::vector<int> ties_buf_;
};

template <DeterministicMdp E>
typename Search<E>::RunResult run_search(const E& env, typename E::State state,
                                         const SearchConfig& cfg) {
    Search<E> search(env, std::move(state), cfg);
    return search.run();
}

}  // namespace amex
