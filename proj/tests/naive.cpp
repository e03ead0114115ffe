#include "naive.hpp"

#include <deque>
#include <functional>

namespace naive {

using mst::AsyncEvent;
using mst::NodeId;

namespace {

void closure_dfs(const mst::ErasureMachine& em, NodeId q, std::set<NodeId>& out) {
    if (!out.insert(q).second) return;
    for (NodeId next : em.eps_edges[static_cast<std::size_t>(q)]) closure_dfs(em, next, out);
}

std::set<NodeId> closure_of(const mst::ErasureMachine& em, const std::set<NodeId>& s) {
    std::set<NodeId> out;
    for (NodeId q : s) closure_dfs(em, q, out);
    return out;
}

}  // namespace

Dfa determinize(const mst::ErasureMachine& em) {
    std::set<AsyncEvent> alphabet;
    for (const auto& edges : em.labeled_edges) {
        for (const auto& [x, _] : edges) alphabet.insert(x);
    }

    Dfa dfa;
    dfa.initial = closure_of(em, {em.initial});

    std::function<void(const std::set<NodeId>&)> expand = [&](const std::set<NodeId>& s) {
        if (!dfa.states.insert(s).second) return;
        for (NodeId q : s) {
            if (em.finals.count(q)) {
                dfa.finals.insert(s);
                break;
            }
        }
        for (const AsyncEvent& x : alphabet) {
            std::set<NodeId> moved;
            for (NodeId q : s) {
                for (const auto& [label, dst] : em.labeled_edges[static_cast<std::size_t>(q)]) {
                    if (label == x) moved.insert(dst);
                }
            }
            if (moved.empty()) continue;
            std::set<NodeId> target = closure_of(em, moved);
            dfa.transitions[{s, x}] = target;
            expand(target);
        }
    };
    expand(dfa.initial);
    return dfa;
}

Dfa dfa_view(const mst::LocalMachine& m) {
    Dfa dfa;
    dfa.initial = m.subset_of(m.initial);
    for (int s = 0; s < m.state_count(); ++s) {
        dfa.states.insert(m.subset_of(s));
        if (m.is_final(s)) dfa.finals.insert(m.subset_of(s));
    }
    for (const auto& [key, dst] : m.transitions) {
        dfa.transitions[{m.subset_of(key.first), key.second}] = m.subset_of(dst);
    }
    return dfa;
}

bool projections_readable(const mst::Csm& csm, const mst::Role& p, const mst::LocalMachine& m,
                          int depth, int channel_bound) {
    std::set<std::pair<mst::Configuration, int>> visited;
    std::deque<std::tuple<mst::Configuration, int, int>> frontier;  // config, m-state, depth left
    frontier.push_back({initial_configuration(csm), m.initial, depth});
    visited.insert({initial_configuration(csm), m.initial});
    while (!frontier.empty()) {
        auto [c, s, left] = std::move(frontier.front());
        frontier.pop_front();
        if (left == 0) continue;
        for (const AsyncEvent& x : enabled_events(csm, c)) {
            mst::Configuration next = step(csm, c, x);
            bool over = false;
            for (const auto& [_, queue] : next.channels) {
                if (static_cast<int>(queue.size()) > channel_bound) over = true;
            }
            if (over) continue;
            int s2 = s;
            if (x.active == p) {
                const auto target = m.next(s, x);
                if (!target) return false;
                s2 = *target;
            }
            if (visited.insert({next, s2}).second) {
                frontier.push_back({std::move(next), s2, left - 1});
            }
        }
    }
    return true;
}

bool word_realizable(const mst::Csm& csm, const mst::Role& p,
                     const std::vector<mst::AsyncEvent>& word, int depth, int channel_bound) {
    std::set<std::pair<mst::Configuration, std::size_t>> visited;
    std::deque<std::tuple<mst::Configuration, std::size_t, int>> frontier;
    frontier.push_back({initial_configuration(csm), 0, depth});
    visited.insert({initial_configuration(csm), 0});
    while (!frontier.empty()) {
        auto [c, matched, left] = std::move(frontier.front());
        frontier.pop_front();
        if (matched == word.size()) return true;
        if (left == 0) continue;
        for (const AsyncEvent& x : enabled_events(csm, c)) {
            std::size_t matched2 = matched;
            if (x.active == p) {
                if (matched >= word.size() || !(word[matched] == x)) continue;
                matched2 = matched + 1;
            }
            mst::Configuration next = step(csm, c, x);
            bool over = false;
            for (const auto& [_, queue] : next.channels) {
                if (static_cast<int>(queue.size()) > channel_bound) over = true;
            }
            if (over) continue;
            if (visited.insert({next, matched2}).second) {
                frontier.push_back({std::move(next), matched2, left - 1});
            }
        }
    }
    return false;
}

std::set<std::vector<AsyncEvent>> machine_prefixes(const mst::LocalMachine& m, int k) {
    std::set<std::vector<AsyncEvent>> out;
    std::function<void(int, std::vector<AsyncEvent>&)> walk = [&](int s,
                                                                  std::vector<AsyncEvent>& word) {
        out.insert(word);
        if (static_cast<int>(word.size()) >= k) return;
        for (const auto& [x, dst] : m.outgoing(s)) {
            word.push_back(x);
            walk(dst, word);
            word.pop_back();
        }
    };
    std::vector<AsyncEvent> word;
    walk(m.initial, word);
    return out;
}

}  // namespace naive
