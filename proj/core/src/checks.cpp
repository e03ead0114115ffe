#include "mst/checks.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "mst/automata.hpp"
#include "mst/decoration.hpp"
#include "mst/messages.hpp"

namespace mst {

namespace {

using DecorationFn = std::function<const std::set<NodeId>&(int)>;

std::string fmt_transition(const LocalMachine& a, int s, const AsyncEvent& x, int s2) {
    return a.state_names[static_cast<std::size_t>(s)] + " " + to_string(x) + " " +
           a.state_names[static_cast<std::size_t>(s2)];
}

struct ParsedTransition {
    int src;
    AsyncEvent event;
    int dst;
};

std::optional<ParsedTransition> parse_transition(const LocalMachine& a, const std::string& text) {
    std::istringstream in(text);
    std::string src, ev, dst;
    if (!(in >> src >> ev >> dst)) return std::nullopt;
    auto si = a.state_index(src);
    auto di = a.state_index(dst);
    if (!si || !di) return std::nullopt;
    try {
        return ParsedTransition{*si, parse_async_event(ev), *di};
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

void final_state_violations(const char* cond, const Role& role, const LocalMachine& a,
                            const DecorationFn& dec, const std::set<NodeId>& finals,
                            std::vector<Violation>& out) {
    for (int s = 0; s < a.state_count(); ++s) {
        const auto& ds = dec(s);
        if (ds.empty() || a.is_final(s)) continue;
        for (NodeId q : ds) {
            if (finals.count(q)) {
                out.push_back({cond, role, a.state_names[static_cast<std::size_t>(s)], {}, q, {}});
                break;
            }
        }
    }
}

void exhaustivity_violations(const char* cond, const Role& role, const ErasureMachine& em,
                             const LocalMachine& a, const DecorationFn& dec, bool receives_only,
                             std::vector<Violation>& out) {
    for (int s = 0; s < a.state_count(); ++s) {
        std::set<AsyncEvent> reported;
        for (NodeId q : dec(s)) {
            for (const auto& [x, _] : em.labeled_edges[static_cast<std::size_t>(q)]) {
                if (receives_only && !x.is_receive()) continue;
                if (a.next(s, x)) continue;
                if (!reported.insert(x).second) continue;
                out.push_back({cond, role, a.state_names[static_cast<std::size_t>(s)], {}, q, x});
            }
        }
    }
}

void send_decoration_violations(const char* cond, const Role& role, const ErasureMachine& em,
                                const LocalMachine& a, const DecorationFn& dec,
                                std::vector<Violation>& out) {
    for (int s = 0; s < a.state_count(); ++s) {
        for (const auto& [x, s2] : a.outgoing(s)) {
            if (!x.is_send()) continue;
            const TrSets tr = tr_sets(em, dec(s), x, dec(s2));
            if (tr.origins == dec(s)) continue;
            NodeId witness = -1;
            for (NodeId q : dec(s)) {
                if (!tr.origins.count(q)) {
                    witness = q;
                    break;
                }
            }
            out.push_back({cond, role, a.state_names[static_cast<std::size_t>(s)],
                           {fmt_transition(a, s, x, s2)}, witness, x});
        }
    }
}

void send_preservation_violations(const char* cond, const Role& role, const LocalMachine& a,
                                  const DecorationFn& dec, const std::set<NodeId>& send_originating,
                                  std::vector<Violation>& out) {
    for (int s = 0; s < a.state_count(); ++s) {
        if (a.has_send_from(s)) continue;
        for (NodeId q : dec(s)) {
            if (send_originating.count(q)) {
                out.push_back({cond, role, a.state_names[static_cast<std::size_t>(s)], {}, q, {}});
                break;
            }
        }
    }
}

// Receive Decoration Validity: a receive from q1 paired with any other
// transition that is not a receive from q1; the alternative continuation must
// not make q1's message available.
void receive_decoration_violations(const char* cond, const GlobalType& g, const Role& role,
                                   const ErasureMachine& em, const LocalMachine& a,
                                   const DecorationFn& dec, std::vector<Violation>& out) {
    for (int s = 0; s < a.state_count(); ++s) {
        const auto edges = a.outgoing(s);
        for (const auto& [recv, s1] : edges) {
            if (!recv.is_receive()) continue;
            const AsyncEvent pending = send_event(recv.peer, role, recv.message);
            for (const auto& [x, s2] : edges) {
                if (x.is_receive() && x.peer == recv.peer) continue;
                const TrSets tr = tr_sets(em, dec(s), x, dec(s2));
                for (NodeId g2 : tr.destinations) {
                    if (m_role(g, g2, role).contains(pending)) {
                        out.push_back({cond, role, a.state_names[static_cast<std::size_t>(s)],
                                       {fmt_transition(a, s, recv, s1), fmt_transition(a, s, x, s2)},
                                       g2, pending});
                        break;
                    }
                }
            }
        }
    }
}

DecorationFn subset_decoration(const LocalMachine& c) {
    return [&c](int s) -> const std::set<NodeId>& { return c.subset_of(s); };
}

DecorationFn map_decoration(const DecorationMap& d) {
    return [&d](int s) -> const std::set<NodeId>& { return d.of(s); };
}

}  // namespace

Verdict check_implementable(const GlobalType& g) {
    Verdict v;
    const GlobalAutomaton aut = build_gaut(g);
    for (const Role& p : roles_of(g)) {
        const ErasureMachine em = erase(g, p);
        const LocalMachine c = subset_construction(g, p);
        const DecorationFn dec = subset_decoration(c);
        // Send Validity: every send transition enabled in all states of s.
        for (int s = 0; s < c.state_count(); ++s) {
            for (const auto& [x, s2] : c.outgoing(s)) {
                if (!x.is_send()) continue;
                const TrSets tr = tr_sets(em, dec(s), x, dec(s2));
                if (tr.origins == dec(s)) continue;
                NodeId witness = -1;
                for (NodeId q : dec(s)) {
                    if (!tr.origins.count(q)) {
                        witness = q;
                        break;
                    }
                }
                v.violations.push_back({condition::send_validity, p,
                                        c.state_names[static_cast<std::size_t>(s)],
                                        {fmt_transition(c, s, x, s2)}, witness, x});
            }
        }
        // Receive Validity: ordered pairs of receive transitions from
        // distinct senders.
        for (int s = 0; s < c.state_count(); ++s) {
            const auto edges = c.outgoing(s);
            for (const auto& [r1, s1] : edges) {
                if (!r1.is_receive()) continue;
                const AsyncEvent pending = send_event(r1.peer, p, r1.message);
                for (const auto& [r2, s2] : edges) {
                    if (!r2.is_receive() || r2.peer == r1.peer) continue;
                    const TrSets tr = tr_sets(em, dec(s), r2, dec(s2));
                    for (NodeId g2 : tr.destinations) {
                        if (m_role(g, g2, p).contains(pending)) {
                            v.violations.push_back(
                                {condition::receive_validity, p,
                                 c.state_names[static_cast<std::size_t>(s)],
                                 {fmt_transition(c, s, r1, s1), fmt_transition(c, s, r2, s2)},
                                 g2, pending});
                            break;
                        }
                    }
                }
            }
        }
    }
    v.pass = v.violations.empty();
    return v;
}

Verdict check_c1(const GlobalType& g, const std::map<Role, LocalMachine>& csm) {
    const std::vector<Role> roles = roles_of(g);
    if (csm.size() != roles.size()) {
        throw std::invalid_argument("check_c1: CSM must bind exactly the roles of the type");
    }
    for (const Role& p : roles) {
        auto it = csm.find(p);
        if (it == csm.end() || !(it->second.role == p)) {
            throw std::invalid_argument("check_c1: no machine bound for role '" + p.name + "'");
        }
    }
    const GlobalAutomaton aut = build_gaut(g);
    Verdict v;
    for (const Role& p : roles) {
        const LocalMachine& a = csm.at(p);
        const ErasureMachine em = erase(g, p);
        const DecorationMap d = decorate(em, a);
        const DecorationFn dec = map_decoration(d);
        final_state_violations(condition::final_state_validity, p, a, dec, aut.finals,
                               v.violations);
        exhaustivity_violations(condition::transition_exhaustivity, p, em, a, dec,
                                /*receives_only=*/false, v.violations);
        send_decoration_violations(condition::send_decoration_validity, p, em, a, dec,
                                   v.violations);
        receive_decoration_violations(condition::receive_decoration_validity, g, p, em, a, dec,
                                      v.violations);
    }
    v.pass = v.violations.empty();
    return v;
}

Verdict check_c2_prime(const GlobalType& g, const LocalMachine& a) {
    const Role p = a.role;
    const GlobalAutomaton aut = build_gaut(g);
    const ErasureMachine em = erase(g, p);
    const DecorationMap d = decorate(em, a);
    const DecorationFn dec = map_decoration(d);
    const StateClasses classes = classify_states(g, p);
    Verdict v;
    final_state_violations(condition::final_state_validity, p, a, dec, aut.finals, v.violations);
    exhaustivity_violations(condition::receive_exhaustivity, p, em, a, dec,
                            /*receives_only=*/true, v.violations);
    send_decoration_violations(condition::send_decoration_validity, p, em, a, dec, v.violations);
    send_preservation_violations(condition::send_preservation, p, a, dec,
                                 classes.send_originating, v.violations);
    receive_decoration_violations(condition::receive_decoration_validity, g, p, em, a, dec,
                                  v.violations);
    v.pass = v.violations.empty();
    return v;
}

Verdict check_c2(const GlobalType& g, const LocalMachine& b, const LocalMachine& a) {
    if (!(a.role == b.role)) {
        throw std::invalid_argument("check_c2: candidate and supertype roles differ");
    }
    const Role p = a.role;
    const GlobalAutomaton aut = build_gaut(g);
    const ErasureMachine em = erase(g, p);
    const DecorationMap db = decorate(em, b);
    const SupertypeDecorationMap dB = decorate_supertype(g, b, a);
    const StateClasses classes = classify_states(g, p);

    // Effective global decoration of each subtype state: the union of the
    // supertype decorations over its d_B image.
    DecorationMap effective;
    for (int s = 0; s < a.state_count(); ++s) {
        auto& u = effective.mapping[s];
        for (int t : dB.of(s)) {
            const auto& dt = db.of(t);
            u.insert(dt.begin(), dt.end());
        }
    }
    const DecorationFn dec = map_decoration(effective);

    Verdict v;
    final_state_violations(condition::final_state_subtype_validity, p, a, dec, aut.finals,
                           v.violations);
    exhaustivity_violations(condition::receive_subtype_exhaustivity, p, em, a, dec,
                            /*receives_only=*/true, v.violations);
    // Send Decoration Subtype Validity over b's transition relation.
    for (int s = 0; s < a.state_count(); ++s) {
        for (const auto& [x, s2] : a.outgoing(s)) {
            if (!x.is_send()) continue;
            const TrSetsMachine tr = tr_sets_machine(b, dB.of(s), x, dB.of(s2));
            if (tr.origins == dB.of(s)) continue;
            v.violations.push_back({condition::send_decoration_subtype_validity, p,
                                    a.state_names[static_cast<std::size_t>(s)],
                                    {fmt_transition(a, s, x, s2)}, {}, x});
        }
    }
    send_preservation_violations(condition::send_subtype_preservation, p, a, dec,
                                 classes.send_originating, v.violations);
    // Receive Decoration Subtype Validity.
    for (int s = 0; s < a.state_count(); ++s) {
        const auto edges = a.outgoing(s);
        for (const auto& [recv, s1] : edges) {
            if (!recv.is_receive()) continue;
            const AsyncEvent pending = send_event(recv.peer, p, recv.message);
            for (const auto& [x, s2] : edges) {
                if (x.is_receive() && x.peer == recv.peer) continue;
                const TrSetsMachine tr = tr_sets_machine(b, dB.of(s), x, dB.of(s2));
                bool reported = false;
                for (int t : tr.destinations) {
                    for (NodeId g2 : db.of(t)) {
                        if (m_role(g, g2, p).contains(pending)) {
                            v.violations.push_back(
                                {condition::receive_decoration_subtype_validity, p,
                                 a.state_names[static_cast<std::size_t>(s)],
                                 {fmt_transition(a, s, recv, s1), fmt_transition(a, s, x, s2)},
                                 g2, pending});
                            reported = true;
                            break;
                        }
                    }
                    if (reported) break;
                }
            }
        }
    }
    v.pass = v.violations.empty();
    return v;
}

namespace {

// Shared formula re-evaluation. `dec` is the decoration the condition is
// stated over; `em` the erasure machine of the violation's role.
bool revalidate_with(const GlobalType& g, const ErasureMachine& em, const LocalMachine& a,
                     const DecorationFn& dec, const std::set<NodeId>& finals,
                     const std::set<NodeId>& send_originating, const Violation& v) {
    const auto state = a.state_index(v.state);
    if (!state) return false;
    const int s = *state;

    if (v.condition == condition::final_state_validity ||
        v.condition == condition::final_state_subtype_validity) {
        if (!v.witness_node) return false;
        return !a.is_final(s) && dec(s).count(*v.witness_node) && finals.count(*v.witness_node);
    }
    if (v.condition == condition::transition_exhaustivity ||
        v.condition == condition::receive_exhaustivity ||
        v.condition == condition::receive_subtype_exhaustivity) {
        if (!v.witness_node || !v.witness_event) return false;
        if (!dec(s).count(*v.witness_node)) return false;
        if (a.next(s, *v.witness_event)) return false;
        const auto& edges = em.labeled_edges[static_cast<std::size_t>(*v.witness_node)];
        return std::any_of(edges.begin(), edges.end(),
                           [&](const auto& e) { return e.first == *v.witness_event; });
    }
    if (v.condition == condition::send_validity ||
        v.condition == condition::send_decoration_validity) {
        if (v.transitions.size() != 1 || !v.witness_node) return false;
        const auto t = parse_transition(a, v.transitions[0]);
        if (!t || t->src != s) return false;
        const TrSets tr = tr_sets(em, dec(s), t->event, dec(t->dst));
        return dec(s).count(*v.witness_node) && !tr.origins.count(*v.witness_node);
    }
    if (v.condition == condition::send_preservation ||
        v.condition == condition::send_subtype_preservation) {
        if (!v.witness_node) return false;
        return !a.has_send_from(s) && dec(s).count(*v.witness_node) &&
               send_originating.count(*v.witness_node);
    }
    if (v.condition == condition::receive_validity ||
        v.condition == condition::receive_decoration_validity) {
        if (v.transitions.size() != 2 || !v.witness_node || !v.witness_event) return false;
        const auto recv = parse_transition(a, v.transitions[0]);
        const auto alt = parse_transition(a, v.transitions[1]);
        if (!recv || !alt || recv->src != s || alt->src != s) return false;
        if (!recv->event.is_receive()) return false;
        if (alt->event.is_receive() && alt->event.peer == recv->event.peer) return false;
        const TrSets tr = tr_sets(em, dec(s), alt->event, dec(alt->dst));
        if (!tr.destinations.count(*v.witness_node)) return false;
        return m_role(g, *v.witness_node, v.role).contains(*v.witness_event);
    }
    return false;
}

}  // namespace

bool revalidate(const GlobalType& g, const Violation& v) {
    const LocalMachine c = subset_construction(g, v.role);
    const ErasureMachine em = erase(g, v.role);
    const GlobalAutomaton aut = build_gaut(g);
    const StateClasses classes = classify_states(g, v.role);
    return revalidate_with(g, em, c, subset_decoration(c), aut.finals, classes.send_originating,
                           v);
}

bool revalidate(const GlobalType& g, const std::map<Role, LocalMachine>& csm, const Violation& v) {
    auto it = csm.find(v.role);
    if (it == csm.end()) return false;
    const ErasureMachine em = erase(g, v.role);
    const DecorationMap d = decorate(em, it->second);
    const GlobalAutomaton aut = build_gaut(g);
    const StateClasses classes = classify_states(g, v.role);
    return revalidate_with(g, em, it->second, map_decoration(d), aut.finals,
                           classes.send_originating, v);
}

bool revalidate(const GlobalType& g, const LocalMachine& a, const Violation& v) {
    if (!(a.role == v.role)) return false;
    const ErasureMachine em = erase(g, v.role);
    const DecorationMap d = decorate(em, a);
    const GlobalAutomaton aut = build_gaut(g);
    const StateClasses classes = classify_states(g, v.role);
    return revalidate_with(g, em, a, map_decoration(d), aut.finals, classes.send_originating, v);
}

bool revalidate(const GlobalType& g, const LocalMachine& b, const LocalMachine& a,
                const Violation& v) {
    if (!(a.role == v.role)) return false;
    const ErasureMachine em = erase(g, v.role);
    const DecorationMap db = decorate(em, b);
    const SupertypeDecorationMap dB = decorate_supertype(g, b, a);
    DecorationMap effective;
    for (int s = 0; s < a.state_count(); ++s) {
        auto& u = effective.mapping[s];
        for (int t : dB.of(s)) {
            const auto& dt = db.of(t);
            u.insert(dt.begin(), dt.end());
        }
    }
    const GlobalAutomaton aut = build_gaut(g);
    const StateClasses classes = classify_states(g, v.role);

    if (v.condition == condition::send_decoration_subtype_validity) {
        const auto state = a.state_index(v.state);
        if (!state || v.transitions.size() != 1) return false;
        const auto t = parse_transition(a, v.transitions[0]);
        if (!t || t->src != *state) return false;
        const TrSetsMachine tr = tr_sets_machine(b, dB.of(*state), t->event, dB.of(t->dst));
        return tr.origins != dB.of(*state);
    }
    if (v.condition == condition::receive_decoration_subtype_validity) {
        const auto state = a.state_index(v.state);
        if (!state || v.transitions.size() != 2 || !v.witness_node || !v.witness_event) {
            return false;
        }
        const auto recv = parse_transition(a, v.transitions[0]);
        const auto alt = parse_transition(a, v.transitions[1]);
        if (!recv || !alt || recv->src != *state || alt->src != *state) return false;
        const TrSetsMachine tr = tr_sets_machine(b, dB.of(*state), alt->event, dB.of(alt->dst));
        for (int t2 : tr.destinations) {
            if (db.of(t2).count(*v.witness_node)) {
                return m_role(g, *v.witness_node, v.role).contains(*v.witness_event);
            }
        }
        return false;
    }
    return revalidate_with(g, em, a, map_decoration(effective), aut.finals,
                           classes.send_originating, v);
}

}  // namespace mst
