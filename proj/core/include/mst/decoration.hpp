#ifndef MST_DECORATION_HPP
#define MST_DECORATION_HPP

#include <map>
#include <set>

#include "mst/automata.hpp"
#include "mst/global_type.hpp"
#include "mst/machine.hpp"

namespace mst {

/// Maps each machine state to the erasure-machine states reachable on the
/// same local words. Empty set marks states the protocol can never drive
/// the machine into.
struct DecorationMap {
    std::map<int, std::set<NodeId>> mapping;

    const std::set<NodeId>& of(int s) const;
};

/// Maps each subtype state to the supertype states reachable on shared
/// words, restricted to supertype states with non-empty decoration.
struct SupertypeDecorationMap {
    std::map<int, std::set<int>> mapping;

    const std::set<int>& of(int s) const;
};

struct DecorationStats {
    std::size_t insertions = 0;
    std::size_t worklist_pops = 0;
};

/// Product fixpoint of the machine with the epsilon-closed erasure machine,
/// FIFO worklist. Unreachable machine states stay empty rather than erroring.
DecorationMap decorate(const GlobalType& g, const LocalMachine& a, DecorationStats* stats = nullptr);

DecorationMap decorate(const ErasureMachine& em, const LocalMachine& a,
                       DecorationStats* stats = nullptr);

/// Decoration of subtype a by supertype b, filtered to b-states whose own
/// decoration with respect to g is non-empty.
SupertypeDecorationMap decorate_supertype(const GlobalType& g, const LocalMachine& b,
                                          const LocalMachine& a);

struct TrSets {
    std::set<NodeId> origins;
    std::set<NodeId> destinations;
};

/// Members of s with an x-then-epsilon* path into s2, and the members of s2
/// so reached, over the erasure machine of role p.
TrSets tr_sets(const GlobalType& g, const Role& p, const std::set<NodeId>& s, const AsyncEvent& x,
               const std::set<NodeId>& s2);

TrSets tr_sets(const ErasureMachine& em, const std::set<NodeId>& s, const AsyncEvent& x,
               const std::set<NodeId>& s2);

struct TrSetsMachine {
    std::set<int> origins;
    std::set<int> destinations;
};

/// Same over a machine's one-step transition relation (no epsilon edges).
TrSetsMachine tr_sets_machine(const LocalMachine& b, const std::set<int>& s, const AsyncEvent& x,
                              const std::set<int>& s2);

}  // namespace mst

#endif
