#include "mst/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace mst {

GlobalAutomaton build_gaut(const GlobalType& g) {
    GlobalAutomaton aut;
    const NodeId n = g.node_count();
    aut.sync_edges.resize(static_cast<std::size_t>(n));
    aut.eps_edge.resize(static_cast<std::size_t>(n));
    for (NodeId id = 0; id < n; ++id) {
        const Node& node = g.node(id);
        switch (node.kind) {
            case NodeKind::End:
                aut.finals.insert(id);
                break;
            case NodeKind::Choice:
                for (const auto& b : node.branches) {
                    aut.sync_edges[static_cast<std::size_t>(id)].push_back(
                        {SyncEvent{node.sender, b.receiver, b.message}, b.continuation});
                }
                break;
            case NodeKind::Rec:
                aut.eps_edge[static_cast<std::size_t>(id)] = node.body;
                break;
            case NodeKind::Var:
                if (node.binder < 0) {
                    throw std::invalid_argument("build_gaut: type is not closed (variable '" +
                                                node.var + "')");
                }
                aut.eps_edge[static_cast<std::size_t>(id)] = node.binder;
                break;
        }
    }
    return aut;
}

std::vector<AsyncEvent> split_event(const SyncEvent& e) {
    return {send_event(e.sender, e.receiver, e.message),
            receive_event(e.receiver, e.sender, e.message)};
}

std::vector<AsyncEvent> split_word(std::span<const SyncEvent> w) {
    std::vector<AsyncEvent> out;
    out.reserve(w.size() * 2);
    for (const auto& e : w) {
        out.push_back(send_event(e.sender, e.receiver, e.message));
        out.push_back(receive_event(e.receiver, e.sender, e.message));
    }
    return out;
}

std::vector<AsyncEvent> project_word(std::span<const AsyncEvent> w, const Role& p) {
    std::vector<AsyncEvent> out;
    for (const auto& x : w) {
        if (x.active == p) out.push_back(x);
    }
    return out;
}

std::set<NodeId> ErasureMachine::closure_of(const std::set<NodeId>& s) const {
    std::set<NodeId> out;
    for (NodeId q : s) {
        const auto& cl = closure.at(static_cast<std::size_t>(q));
        out.insert(cl.begin(), cl.end());
    }
    return out;
}

std::vector<AsyncEvent> ErasureMachine::label_universe() const {
    std::set<AsyncEvent> labels;
    for (const auto& edges : labeled_edges) {
        for (const auto& [x, _] : edges) labels.insert(x);
    }
    return {labels.begin(), labels.end()};
}

ErasureMachine erase(const GlobalType& g, const Role& p) {
    const GlobalAutomaton aut = build_gaut(g);
    ErasureMachine em;
    em.role = p;
    em.initial = aut.initial;
    em.finals = aut.finals;
    const std::size_t n = static_cast<std::size_t>(aut.state_count());
    em.labeled_edges.resize(n);
    em.eps_edges.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
        for (const auto& [sync, dst] : aut.sync_edges[q]) {
            if (sync.sender == p) {
                em.labeled_edges[q].push_back({send_event(p, sync.receiver, sync.message), dst});
            } else if (sync.receiver == p) {
                em.labeled_edges[q].push_back({receive_event(p, sync.sender, sync.message), dst});
            } else {
                em.eps_edges[q].push_back(dst);
            }
        }
        if (aut.eps_edge[q]) em.eps_edges[q].push_back(*aut.eps_edge[q]);
    }
    // Reflexive-transitive closure per node; the graphs stay desk-scale.
    em.closure.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
        std::set<NodeId>& cl = em.closure[q];
        std::deque<NodeId> work{static_cast<NodeId>(q)};
        cl.insert(static_cast<NodeId>(q));
        while (!work.empty()) {
            const NodeId cur = work.front();
            work.pop_front();
            for (NodeId nxt : em.eps_edges[static_cast<std::size_t>(cur)]) {
                if (cl.insert(nxt).second) work.push_back(nxt);
            }
        }
    }
    return em;
}

LocalMachine subset_construction(const GlobalType& g, const Role& p) {
    const ErasureMachine em = erase(g, p);
    const std::vector<AsyncEvent> labels = em.label_universe();

    LocalMachine m;
    m.role = p;
    std::map<std::set<NodeId>, int> index;
    std::deque<std::set<NodeId>> work;

    auto intern = [&](const std::set<NodeId>& s) {
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        const int id = static_cast<int>(m.state_names.size());
        index.emplace(s, id);
        m.state_names.push_back("s" + std::to_string(id));
        m.state_subsets.push_back(s);
        for (NodeId q : s) {
            if (em.finals.count(q)) {
                m.finals.insert(id);
                break;
            }
        }
        work.push_back(s);
        return id;
    };

    const std::set<NodeId> s0 = em.closure.at(static_cast<std::size_t>(em.initial));
    m.initial = intern(s0);
    while (!work.empty()) {
        const std::set<NodeId> s = work.front();
        work.pop_front();
        const int src = index.at(s);
        for (const auto& x : labels) {
            std::set<NodeId> target;
            for (NodeId q : s) {
                for (const auto& [label, dst] : em.labeled_edges[static_cast<std::size_t>(q)]) {
                    if (label == x) {
                        const auto& cl = em.closure[static_cast<std::size_t>(dst)];
                        target.insert(cl.begin(), cl.end());
                    }
                }
            }
            if (target.empty()) continue;
            const int to = intern(target);
            m.transitions[{src, x}] = to;
        }
    }
    return m;
}

StateClasses classify_states(const GlobalType& g, const Role& p) {
    StateClasses out;
    for (NodeId id = 0; id < g.node_count(); ++id) {
        const Node& n = g.node(id);
        if (n.kind != NodeKind::Choice) continue;
        if (n.sender == p) out.send_originating.insert(id);
        for (const auto& b : n.branches) {
            if (b.receiver == p) {
                out.receive_originating.insert(id);
                break;
            }
        }
    }
    return out;
}

}  // namespace mst
