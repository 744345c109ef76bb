#pragma once

#include <deque>
#include <sstream>
#include <string>

#include "amex/search.hpp"

namespace amex {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

// Snapshot of a search tree as a DOT digraph.  Nodes appear in breadth-first
// order by insertion index, labeled "key|Q|N_c|N_p|status"; closed nodes are
// filled.  Output is deterministic for a given tree.
template <DeterministicMdp E>
std::string to_dot(const SearchTree<E>& tree, Variant variant) {
    std::ostringstream out;
    out << "digraph search {\n";
    out << "  node [shape=box, fontsize=10];\n";
    std::deque<int> queue;
    if (tree.size() > 0) queue.push_back(0);
    std::vector<std::pair<int, int>> edges;  // parent, child
    while (!queue.empty()) {
        int idx = queue.front();
        queue.pop_front();
        const SearchNode<E>& n = tree[idx];
        std::ostringstream label;
        label << dot_escape(n.key) << "|";
        if (n.N_c >= 1) {
            std::ostringstream q;
            q.precision(6);
            q << node_q(n, variant);
            label << q.str();
        } else {
            label << "-";
        }
        label << "|" << n.N_c << "|" << n.N_p << "|" << status_name(n.status);
        out << "  n" << idx << " [label=\"" << label.str() << "\"";
        switch (n.status) {
            case NodeStatus::Open: break;
            case NodeStatus::ClosedTerminal: out << ", style=filled, fillcolor=gray85"; break;
            case NodeStatus::ClosedTransposition: out << ", style=filled, fillcolor=gray70"; break;
            case NodeStatus::ClosedComplete: out << ", style=filled, fillcolor=gray55"; break;
        }
        out << "];\n";
        for (int a = 0; a < static_cast<int>(n.children.size()); ++a) {
            int ch = n.children[static_cast<std::size_t>(a)];
            if (ch >= 0) {
                queue.push_back(ch);
                edges.emplace_back(idx, ch);
            }
        }
    }
    for (const auto& [parent, child] : edges)
        out << "  n" << parent << " -> n" << child << " [label=\""
            << tree[child].action_from_parent << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace amex
