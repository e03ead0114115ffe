#include "mst/decoration.hpp"

#include <deque>

namespace mst {

const std::set<NodeId>& DecorationMap::of(int s) const {
    static const std::set<NodeId> empty;
    auto it = mapping.find(s);
    return it == mapping.end() ? empty : it->second;
}

const std::set<int>& SupertypeDecorationMap::of(int s) const {
    static const std::set<int> empty;
    auto it = mapping.find(s);
    return it == mapping.end() ? empty : it->second;
}

DecorationMap decorate(const ErasureMachine& em, const LocalMachine& a, DecorationStats* stats) {
    if (!(a.role == em.role)) {
        throw std::invalid_argument("decorate: machine role '" + a.role.name +
                                    "' does not match erasure role '" + em.role.name + "'");
    }
    DecorationMap d;
    for (int s = 0; s < a.state_count(); ++s) d.mapping[s];  // total on states

    std::deque<std::pair<int, NodeId>> work;
    auto add = [&](int s, NodeId q) {
        if (d.mapping[s].insert(q).second) {
            work.push_back({s, q});
            if (stats) ++stats->insertions;
        }
    };
    for (NodeId q : em.closure.at(static_cast<std::size_t>(em.initial))) add(a.initial, q);

    while (!work.empty()) {
        auto [s, q] = work.front();
        work.pop_front();
        if (stats) ++stats->worklist_pops;
        for (const auto& [x, s2] : a.outgoing(s)) {
            for (const auto& [label, q2] : em.labeled_edges[static_cast<std::size_t>(q)]) {
                if (!(label == x)) continue;
                for (NodeId q3 : em.closure[static_cast<std::size_t>(q2)]) add(s2, q3);
            }
        }
    }
    return d;
}

DecorationMap decorate(const GlobalType& g, const LocalMachine& a, DecorationStats* stats) {
    const auto roles = roles_of(g);
    if (std::find(roles.begin(), roles.end(), a.role) == roles.end()) {
        throw std::invalid_argument("decorate: role '" + a.role.name + "' does not occur in the type");
    }
    return decorate(erase(g, a.role), a, stats);
}

SupertypeDecorationMap decorate_supertype(const GlobalType& g, const LocalMachine& b,
                                          const LocalMachine& a) {
    if (!(a.role == b.role)) {
        throw std::invalid_argument("decorate_supertype: role mismatch ('" + a.role.name +
                                    "' vs '" + b.role.name + "')");
    }
    const DecorationMap db = decorate(g, b);

    SupertypeDecorationMap d;
    for (int s = 0; s < a.state_count(); ++s) d.mapping[s];

    std::set<std::pair<int, int>> seen;
    std::deque<std::pair<int, int>> work;
    auto add = [&](int s, int t) {
        if (!seen.insert({s, t}).second) return;
        if (!db.of(t).empty()) d.mapping[s].insert(t);
        work.push_back({s, t});
    };
    add(a.initial, b.initial);
    while (!work.empty()) {
        auto [s, t] = work.front();
        work.pop_front();
        for (const auto& [x, s2] : a.outgoing(s)) {
            if (auto t2 = b.next(t, x)) add(s2, *t2);
        }
    }
    return d;
}

// Origins absorb leading epsilon steps: a member of s originates x when some
// node in its epsilon closure carries the x edge. With epsilon-closed sets
// the destination side is unaffected by where the epsilon steps sit.
TrSets tr_sets(const ErasureMachine& em, const std::set<NodeId>& s, const AsyncEvent& x,
               const std::set<NodeId>& s2) {
    TrSets out;
    for (NodeId q : s) {
        bool origin = false;
        for (NodeId q1 : em.closure[static_cast<std::size_t>(q)]) {
            for (const auto& [label, q2] : em.labeled_edges[static_cast<std::size_t>(q1)]) {
                if (!(label == x)) continue;
                for (NodeId q3 : em.closure[static_cast<std::size_t>(q2)]) {
                    if (s2.count(q3)) {
                        origin = true;
                        out.destinations.insert(q3);
                    }
                }
            }
        }
        if (origin) out.origins.insert(q);
    }
    return out;
}

TrSets tr_sets(const GlobalType& g, const Role& p, const std::set<NodeId>& s, const AsyncEvent& x,
               const std::set<NodeId>& s2) {
    return tr_sets(erase(g, p), s, x, s2);
}

TrSetsMachine tr_sets_machine(const LocalMachine& b, const std::set<int>& s, const AsyncEvent& x,
                              const std::set<int>& s2) {
    TrSetsMachine out;
    for (int t : s) {
        if (auto t2 = b.next(t, x); t2 && s2.count(*t2)) {
            out.origins.insert(t);
            out.destinations.insert(*t2);
        }
    }
    return out;
}

}  // namespace mst
