#include <doctest.h>

#include "corpus.hpp"
#include "mst/decoration.hpp"
#include "mst/messages.hpp"
#include "mst/oracle.hpp"

using namespace mst;

TEST_CASE("available messages: single pending send") {
    const GlobalType g = corpus::by_name("g2_sec2");  // q -> p : m . 0
    const auto set = m_role(g, 0, Role{"p"});
    CHECK(set.events == std::set<AsyncEvent>{send_event({"q"}, {"p"}, {"m"})});
}

TEST_CASE("available messages: both senders pending") {
    const GlobalType g = corpus::by_name("g1_sec2");  // q -> p : m . r -> p : m . 0
    const auto set = m_role(g, 0, Role{"p"});
    CHECK(set.events == std::set<AsyncEvent>{send_event({"q"}, {"p"}, {"m"}),
                                             send_event({"r"}, {"p"}, {"m"})});
}

TEST_CASE("available messages: evaluation at a subterm") {
    const GlobalType g = corpus::by_name("g1_sec2");
    // Node 1 is the r -> p : m . 0 subterm; only r's send shows up there.
    const auto set = m_role(g, 1, Role{"p"});
    CHECK(set.events == std::set<AsyncEvent>{send_event({"r"}, {"p"}, {"m"})});
}

TEST_CASE("available messages: blocked sender contributes nothing") {
    const GlobalType g = parse_global_type("p -> q : m . 0");
    CHECK(m_role(g, 0, Role{"p"}).events.empty());
}

TEST_CASE("available messages: later send on the same channel is masked") {
    // At the root only the first p->q message can be at the channel head.
    const GlobalType g = parse_global_type("p -> q : first . p -> q : second . 0");
    const auto set = m_role(g, 0, Role{"r"});
    CHECK(set.events == std::set<AsyncEvent>{send_event({"p"}, {"q"}, {"first"})});
}

TEST_CASE("available messages: wrapper equals explicit blocked set") {
    const GlobalType g = corpus::by_name("g1_sec2");
    CHECK(m_role(g, 0, Role{"p"}).events ==
          available_messages(g, 0, BlockedSet{{Role{"p"}}, {}}).events);
}

TEST_CASE("available messages: unknown node throws") {
    const GlobalType g = corpus::by_name("g2_sec2");
    CHECK_THROWS_AS(m_role(g, 99, Role{"p"}), std::out_of_range);
    CHECK_THROWS_AS(available_messages(g, 0, BlockedSet{}), std::invalid_argument);
}

TEST_CASE("available messages: recursion unfolds each variable once") {
    const GlobalType g = corpus::by_name("v6_pingpong");  // mu t . p->q:m . q->p:ack . t
    AvailEvalStats stats;
    const auto set = available_messages(g, 0, BlockedSet{{Role{"q"}}, {}}, &stats);
    CHECK(stats.var_guard_hits >= 1);  // the unfolding guard must fire
    CHECK(set.events.count(send_event({"p"}, {"q"}, {"m"})));
    // Terminates on every corpus node for every role.
    for (const auto& entry : corpus::types()) {
        for (const auto& p : roles_of(entry.type)) {
            for (NodeId id = 0; id < entry.type.node_count(); ++id) {
                CHECK_NOTHROW(m_role(entry.type, id, p));
            }
        }
    }
}

TEST_CASE("available messages: size bound and receiver consistency") {
    for (const auto& entry : corpus::types()) {
        const auto roles = roles_of(entry.type);
        const auto msgs = messages_of(entry.type);
        const std::size_t bound = roles.size() * roles.size() * msgs.size();
        for (const auto& p : roles) {
            for (NodeId id = 0; id < entry.type.node_count(); ++id) {
                const auto set = m_role(entry.type, id, p);
                CHECK(set.events.size() <= bound);
                for (const auto& e : set.events) {
                    CHECK(e.is_send());
                    CHECK(msgs.count(e.message));
                }
            }
        }
    }
}

TEST_CASE("available messages: channel heads of blocked roles are covered") {
    // Desk-scale cross-check against the executor: whenever role p cannot
    // move, every channel-head send event is available at some global state
    // decorating p's current subset state.
    for (const auto& entry : corpus::types()) {
        const GlobalType& g = entry.type;
        const Csm csm = subset_csm(g);
        const auto roles = roles_of(g);
        // Walk all configurations reachable within the bounds and remember
        // the trace that got us there.
        struct Item {
            Configuration config;
            std::vector<AsyncEvent> trace;
        };
        std::set<Configuration> seen;
        std::vector<Item> queue{{initial_configuration(csm), {}}};
        seen.insert(queue[0].config);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const auto [config, trace] = queue[i];
            if (trace.size() < 12) {
                for (const auto& x : enabled_events(csm, config)) {
                    Configuration next = step(csm, config, x);
                    bool over = false;
                    for (const auto& [_, q] : next.channels) {
                        if (q.size() > 2) over = true;
                    }
                    if (over) continue;
                    if (seen.insert(next).second) {
                        auto t = trace;
                        t.push_back(x);
                        queue.push_back({std::move(next), std::move(t)});
                    }
                }
            }
        }
        for (const auto& item : queue) {
            for (std::size_t pi = 0; pi < roles.size(); ++pi) {
                const Role& p = roles[pi];
                const LocalMachine& m = csm.machines.at(p);
                const int state = item.config.states[pi];
                bool p_can_move = false;
                for (const auto& x : enabled_events(csm, item.config)) {
                    if (x.active == p) p_can_move = true;
                }
                if (p_can_move) continue;
                for (const auto& [chan, queue_] : item.config.channels) {
                    if (queue_.empty()) continue;
                    const AsyncEvent head =
                        send_event(csm.order[static_cast<std::size_t>(chan.first)],
                                   csm.order[static_cast<std::size_t>(chan.second)], queue_.front());
                    bool covered = false;
                    for (NodeId node : m.subset_of(state)) {
                        if (m_role(g, node, p).contains(head)) covered = true;
                    }
                    CAPTURE(entry.name, p.name, to_string(head));
                    CHECK(covered);
                }
            }
        }
    }
}
