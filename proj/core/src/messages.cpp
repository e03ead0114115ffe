#include "mst/messages.hpp"

#include <functional>

namespace mst {

namespace {

struct Evaluator {
    const GlobalType& g;
    const std::set<Message>& universe;
    AvailEvalStats* stats;

    std::set<AsyncEvent> eval(NodeId node, std::set<Role> blocked, std::set<std::string> unfolded) {
        const Node& n = g.node(node);
        switch (n.kind) {
            case NodeKind::End:
                return {};
            case NodeKind::Rec: {
                unfolded.insert(n.var);
                return eval(n.body, std::move(blocked), std::move(unfolded));
            }
            case NodeKind::Var: {
                if (unfolded.count(n.var)) {
                    if (stats) ++stats->var_guard_hits;
                    return {};
                }
                if (stats) ++stats->expansions;
                unfolded.insert(n.var);
                // The binder's body; resolved by occurrence so shadowed
                // names unfold to the right subterm.
                return eval(g.node(n.binder).body, std::move(blocked), std::move(unfolded));
            }
            case NodeKind::Choice: {
                std::set<AsyncEvent> out;
                if (!blocked.count(n.sender)) {
                    for (const auto& b : n.branches) {
                        std::set<AsyncEvent> sub = eval(b.continuation, blocked, unfolded);
                        for (const auto& m : universe) {
                            sub.erase(send_event(n.sender, b.receiver, m));
                        }
                        sub.insert(send_event(n.sender, b.receiver, b.message));
                        out.insert(sub.begin(), sub.end());
                    }
                } else {
                    for (const auto& b : n.branches) {
                        std::set<Role> blocked2 = blocked;
                        blocked2.insert(b.receiver);
                        std::set<AsyncEvent> sub = eval(b.continuation, std::move(blocked2), unfolded);
                        out.insert(sub.begin(), sub.end());
                    }
                }
                return out;
            }
        }
        return {};
    }
};

}  // namespace

AvailableMessageSet available_messages(const GlobalType& g, NodeId node, const BlockedSet& blocked,
                                       AvailEvalStats* stats) {
    if (node < 0 || node >= g.node_count()) {
        throw std::out_of_range("available_messages: unknown node " + std::to_string(node));
    }
    if (blocked.roles.empty()) {
        throw std::invalid_argument("available_messages: blocked role set must be non-empty");
    }
    const std::set<Message> universe = messages_of(g);
    Evaluator ev{g, universe, stats};
    return AvailableMessageSet{ev.eval(node, blocked.roles, blocked.unfolded)};
}

AvailableMessageSet m_role(const GlobalType& g, NodeId node, const Role& p) {
    return available_messages(g, node, BlockedSet{{p}, {}});
}

}  // namespace mst
