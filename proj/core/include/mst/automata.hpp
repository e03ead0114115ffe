#ifndef MST_AUTOMATA_HPP
#define MST_AUTOMATA_HPP

#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "mst/global_type.hpp"
#include "mst/machine.hpp"
#include "mst/types.hpp"

namespace mst {

/// GAut(G): states are the AST nodes of G, transitions are the choice
/// exchanges plus the two recursion epsilon steps (binder to body, variable
/// back to binder). Finals are the End nodes.
struct GlobalAutomaton {
    NodeId initial = 0;
    std::set<NodeId> finals;
    std::vector<std::vector<std::pair<SyncEvent, NodeId>>> sync_edges;  // per node
    std::vector<std::optional<NodeId>> eps_edge;                        // per node

    NodeId state_count() const { return static_cast<NodeId>(sync_edges.size()); }
};

GlobalAutomaton build_gaut(const GlobalType& g);

/// GAut(G) with every transition relabeled by split(a) projected onto one
/// role's alphabet; an epsilon-NFA over that role's events.
struct ErasureMachine {
    Role role;
    NodeId initial = 0;
    std::set<NodeId> finals;
    std::vector<std::vector<std::pair<AsyncEvent, NodeId>>> labeled_edges;  // per node
    std::vector<std::vector<NodeId>> eps_edges;                             // per node
    std::vector<std::set<NodeId>> closure;  // reflexive-transitive epsilon closure

    NodeId state_count() const { return static_cast<NodeId>(labeled_edges.size()); }

    std::set<NodeId> closure_of(const std::set<NodeId>& s) const;

    /// All distinct labels occurring on edges, ordered.
    std::vector<AsyncEvent> label_universe() const;
};

ErasureMachine erase(const GlobalType& g, const Role& p);

std::vector<AsyncEvent> split_word(std::span<const SyncEvent> w);
std::vector<AsyncEvent> split_event(const SyncEvent& e);

/// Keeps exactly the events whose active role is p, preserving order.
std::vector<AsyncEvent> project_word(std::span<const AsyncEvent> w, const Role& p);

/// Determinization of erase(g, p) with epsilon closure; the canonical local
/// implementation C(G, p). Every state is a non-empty closed subset of the
/// global automaton states, recorded in state_subsets.
LocalMachine subset_construction(const GlobalType& g, const Role& p);

struct StateClasses {
    std::set<NodeId> send_originating;
    std::set<NodeId> receive_originating;
};

/// Choice nodes where p is the sender, resp. where some branch receives at p.
StateClasses classify_states(const GlobalType& g, const Role& p);

}  // namespace mst

#endif
