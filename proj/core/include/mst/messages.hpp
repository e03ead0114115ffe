#ifndef MST_MESSAGES_HPP
#define MST_MESSAGES_HPP

#include <set>
#include <string>

#include "mst/global_type.hpp"
#include "mst/types.hpp"

namespace mst {

/// Parameters of the available-message computation: the blocked roles B and
/// the recursion variables already unfolded on the current path.
struct BlockedSet {
    std::set<Role> roles;
    std::set<std::string> unfolded;
};

/// Send events that can sit at channel heads while the blocked roles make no
/// further moves.
struct AvailableMessageSet {
    std::set<AsyncEvent> events;  // all of kind Send

    bool contains(const AsyncEvent& e) const { return events.count(e) != 0; }
};

struct AvailEvalStats {
    int var_guard_hits = 0;  // times an already-unfolded variable returned empty
    int expansions = 0;      // times a variable was unfolded into its binder body
};

/// Evaluates the available-message set at `node`, treating the node's subterm
/// as the root while variables still resolve against the whole of g.
/// Requires a non-empty blocked role set; throws std::out_of_range on an
/// unknown node and std::invalid_argument on empty blocked.roles.
AvailableMessageSet available_messages(const GlobalType& g, NodeId node, const BlockedSet& blocked,
                                       AvailEvalStats* stats = nullptr);

/// The single-role shorthand M^p.
AvailableMessageSet m_role(const GlobalType& g, NodeId node, const Role& p);

}  // namespace mst

#endif
