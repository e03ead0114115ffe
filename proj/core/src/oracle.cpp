#include "mst/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace mst {

int Csm::role_index(const Role& r) const {
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i] == r) return static_cast<int>(i);
    }
    return -1;
}

Csm subset_csm(const GlobalType& g) {
    Csm csm;
    csm.order = roles_of(g);
    for (const Role& p : csm.order) csm.machines.emplace(p, subset_construction(g, p));
    return csm;
}

Csm subset_context(const GlobalType& g, const LocalMachine& candidate) {
    Csm csm = subset_csm(g);
    auto it = csm.machines.find(candidate.role);
    if (it == csm.machines.end()) {
        throw std::invalid_argument("subset_context: role '" + candidate.role.name +
                                    "' does not occur in the type");
    }
    it->second = candidate;
    return csm;
}

Configuration initial_configuration(const Csm& csm) {
    Configuration c;
    for (const Role& p : csm.order) c.states.push_back(csm.machines.at(p).initial);
    return c;
}

bool is_final(const Csm& csm, const Configuration& c) {
    if (!c.channels.empty()) return false;
    for (std::size_t i = 0; i < csm.order.size(); ++i) {
        if (!csm.machines.at(csm.order[i]).is_final(c.states[i])) return false;
    }
    return true;
}

StepError::StepError(StepErrorKind kind_, std::string msg)
    : std::runtime_error(std::move(msg)), kind(kind_) {}

Configuration step(const Csm& csm, const Configuration& c, const AsyncEvent& x) {
    const int active = csm.role_index(x.active);
    const int peer = csm.role_index(x.peer);
    if (active < 0) {
        throw StepError(StepErrorKind::NoSuchTransition,
                        "role '" + x.active.name + "' is not part of the CSM");
    }
    const LocalMachine& m = csm.machines.at(x.active);
    const auto target = m.next(c.states[static_cast<std::size_t>(active)], x);
    if (!target) {
        throw StepError(StepErrorKind::NoSuchTransition,
                        "no transition on '" + to_string(x) + "' from state '" +
                            m.state_names[static_cast<std::size_t>(
                                c.states[static_cast<std::size_t>(active)])] +
                            "'");
    }
    Configuration out = c;
    out.states[static_cast<std::size_t>(active)] = *target;
    if (x.is_send()) {
        if (peer < 0) {
            throw StepError(StepErrorKind::NoSuchTransition,
                            "role '" + x.peer.name + "' is not part of the CSM");
        }
        out.channels[{active, peer}].push_back(x.message);
    } else {
        auto it = out.channels.find({peer, active});
        if (it == out.channels.end() || it->second.empty() || !(it->second.front() == x.message)) {
            throw StepError(StepErrorKind::EmptyOrMismatchedChannel,
                            "channel head does not provide '" + to_string(x) + "'");
        }
        it->second.erase(it->second.begin());
        if (it->second.empty()) out.channels.erase(it);
    }
    return out;
}

std::vector<AsyncEvent> enabled_events(const Csm& csm, const Configuration& c) {
    std::vector<AsyncEvent> sends, receives;
    for (std::size_t i = 0; i < csm.order.size(); ++i) {
        const LocalMachine& m = csm.machines.at(csm.order[i]);
        for (const auto& [x, _] : m.outgoing(c.states[i])) {
            if (x.is_send()) {
                if (csm.role_index(x.peer) >= 0) sends.push_back(x);
            } else {
                const int peer = csm.role_index(x.peer);
                if (peer < 0) continue;
                auto it = c.channels.find({peer, static_cast<int>(i)});
                if (it != c.channels.end() && !it->second.empty() &&
                    it->second.front() == x.message) {
                    receives.push_back(x);
                }
            }
        }
    }
    auto canonical = [&](const AsyncEvent& a, const AsyncEvent& b) {
        const auto ka = std::tuple(csm.role_index(a.active), csm.role_index(a.peer), a.message);
        const auto kb = std::tuple(csm.role_index(b.active), csm.role_index(b.peer), b.message);
        return ka < kb;
    };
    std::sort(sends.begin(), sends.end(), canonical);
    std::sort(receives.begin(), receives.end(), canonical);
    sends.insert(sends.end(), receives.begin(), receives.end());
    return sends;
}

namespace {

bool channels_within(const Configuration& c, int bound) {
    for (const auto& [_, queue] : c.channels) {
        if (static_cast<int>(queue.size()) > bound) return false;
    }
    return true;
}

}  // namespace

ExplorationReport explore(const Csm& csm, int depth_bound, int channel_bound,
                          std::size_t terminated_cap) {
    if (depth_bound < 1 || channel_bound < 1) {
        throw std::invalid_argument("explore: bounds must be >= 1");
    }
    ExplorationReport report;
    std::set<Configuration> visited;
    std::deque<std::pair<Configuration, std::vector<AsyncEvent>>> frontier;
    const Configuration init = initial_configuration(csm);
    visited.insert(init);
    frontier.push_back({init, {}});

    while (!frontier.empty()) {
        auto [c, trace] = std::move(frontier.front());
        frontier.pop_front();
        const std::vector<AsyncEvent> enabled = enabled_events(csm, c);
        if (enabled.empty() && !is_final(csm, c)) report.deadlocks.push_back({c, trace});
        if (is_final(csm, c)) {
            if (report.terminated.size() < terminated_cap) {
                report.terminated.push_back(trace);
            } else {
                report.terminated_cap_hit = true;
            }
        }
        if (static_cast<int>(trace.size()) >= depth_bound) {
            if (!enabled.empty()) report.truncated = true;
            continue;
        }
        for (const AsyncEvent& x : enabled) {
            Configuration next = step(csm, c, x);
            if (!channels_within(next, channel_bound)) {
                report.truncated = true;
                continue;
            }
            if (visited.insert(next).second) {
                auto extended = trace;
                extended.push_back(x);
                frontier.push_back({std::move(next), std::move(extended)});
            }
        }
    }
    report.reachable = visited.size();
    return report;
}

namespace {

TraceCompareResult compare_impl(const Csm& a, const Csm& b, int k, bool symmetric) {
    std::set<Role> ra(a.order.begin(), a.order.end());
    std::set<Role> rb(b.order.begin(), b.order.end());
    if (ra != rb) {
        throw std::invalid_argument("bounded_trace_compare: CSMs have different role sets");
    }
    TraceCompareResult result;
    std::set<std::pair<Configuration, Configuration>> visited;
    std::deque<std::tuple<Configuration, Configuration, std::vector<AsyncEvent>>> frontier;
    const auto ia = initial_configuration(a);
    const auto ib = initial_configuration(b);
    visited.insert({ia, ib});
    frontier.push_back({ia, ib, {}});

    while (!frontier.empty()) {
        auto [ca, cb, trace] = std::move(frontier.front());
        frontier.pop_front();
        if (static_cast<int>(trace.size()) >= k) continue;
        const auto ea = enabled_events(a, ca);
        const auto eb = enabled_events(b, cb);
        std::set<AsyncEvent> sa(ea.begin(), ea.end());
        std::set<AsyncEvent> sb(eb.begin(), eb.end());
        std::set<AsyncEvent> all = sa;
        all.insert(sb.begin(), sb.end());
        for (const AsyncEvent& x : all) {
            const bool ina = sa.count(x) != 0;
            const bool inb = sb.count(x) != 0;
            if (ina && inb) {
                Configuration na = step(a, ca, x);
                Configuration nb = step(b, cb, x);
                // Channel bound k; with depth <= k it can never cut sends.
                if (!channels_within(na, k)) continue;
                if (visited.insert({na, nb}).second) {
                    auto extended = trace;
                    extended.push_back(x);
                    frontier.push_back({std::move(na), std::move(nb), std::move(extended)});
                }
            } else if (ina || (symmetric && inb)) {
                auto word = trace;
                word.push_back(x);
                result.equal_prefixes = false;
                result.counterexample = std::move(word);
                return result;
            }
        }
    }
    return result;
}

}  // namespace

TraceCompareResult bounded_trace_compare(const Csm& a, const Csm& b, int k) {
    return compare_impl(a, b, k, /*symmetric=*/true);
}

TraceCompareResult bounded_trace_included(const Csm& a, const Csm& b, int k) {
    return compare_impl(a, b, k, /*symmetric=*/false);
}

std::set<std::vector<AsyncEvent>> bounded_traces(const Csm& csm, int k, int channel_bound) {
    std::set<std::vector<AsyncEvent>> out;
    std::function<void(const Configuration&, std::vector<AsyncEvent>&)> walk =
        [&](const Configuration& c, std::vector<AsyncEvent>& trace) {
            out.insert(trace);
            if (static_cast<int>(trace.size()) >= k) return;
            for (const AsyncEvent& x : enabled_events(csm, c)) {
                Configuration next = step(csm, c, x);
                if (!channels_within(next, channel_bound)) continue;
                trace.push_back(x);
                walk(next, trace);
                trace.pop_back();
            }
        };
    const Configuration init = initial_configuration(csm);
    std::vector<AsyncEvent> trace;
    walk(init, trace);
    return out;
}

namespace {

int count_sends(const std::vector<AsyncEvent>& w, std::size_t upto, const Role& from,
                const Role& to) {
    int n = 0;
    for (std::size_t i = 0; i < upto; ++i) {
        if (w[i].is_send() && w[i].active == from && w[i].peer == to) ++n;
    }
    return n;
}

int count_receives(const std::vector<AsyncEvent>& w, std::size_t upto, const Role& at,
                   const Role& from) {
    int n = 0;
    for (std::size_t i = 0; i < upto; ++i) {
        if (w[i].is_receive() && w[i].active == at && w[i].peer == from) ++n;
    }
    return n;
}

// May the adjacent pair first.second be swapped? `prefix_end` indexes the
// first element of the pair within w.
bool swappable(const std::vector<AsyncEvent>& w, std::size_t prefix_end, const AsyncEvent& first,
               const AsyncEvent& second) {
    if (first.is_send() && second.is_send()) {
        return !(first.active == second.active);  // rule 1
    }
    if (first.is_receive() && second.is_receive()) {
        return !(first.active == second.active);  // rule 2
    }
    const AsyncEvent& snd = first.is_send() ? first : second;
    const AsyncEvent& rcv = first.is_send() ? second : first;
    if (snd.active == rcv.active) return false;  // same role, program order
    if (rcv.active == snd.peer && rcv.peer == snd.active) {
        // Rule 4: matching channel; needs backlog in the prefix before the pair.
        return count_sends(w, prefix_end, snd.active, snd.peer) >
               count_receives(w, prefix_end, rcv.active, rcv.peer);
    }
    // Rule 3: unrelated send/receive.
    return true;
}

}  // namespace

std::set<std::vector<AsyncEvent>> indist_neighbors(const std::vector<AsyncEvent>& w) {
    std::set<std::vector<AsyncEvent>> out;
    if (w.size() < 2) return out;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == w[i + 1]) continue;
        if (swappable(w, i, w[i], w[i + 1])) {
            auto v = w;
            std::swap(v[i], v[i + 1]);
            out.insert(std::move(v));
        }
    }
    return out;
}

std::vector<ClosureViolation> closure_check(const std::set<std::vector<AsyncEvent>>& traces,
                                            int k) {
    std::vector<ClosureViolation> out;
    for (const auto& w : traces) {
        for (const auto& n : indist_neighbors(w)) {
            if (static_cast<int>(n.size()) > k) continue;
            if (!traces.count(n)) out.push_back({w, n});
        }
    }
    return out;
}

namespace {

struct RunEnumerator {
    const GlobalType& g;
    int unroll;
    std::vector<GlobalRun> out;
    std::map<NodeId, int> entries;
    std::vector<NodeId> states;
    std::vector<SyncEvent> labels;

    void walk(NodeId cur) {
        const Node& n = g.node(cur);
        switch (n.kind) {
            case NodeKind::End:
                emit(true, false);
                return;
            case NodeKind::Rec: {
                int& count = entries[cur];
                if (count >= unroll) {
                    emit(false, true);
                    return;
                }
                ++count;
                walk(n.body);
                --count;
                return;
            }
            case NodeKind::Var:
                walk(n.binder);
                return;
            case NodeKind::Choice:
                for (const auto& b : n.branches) {
                    labels.push_back(SyncEvent{n.sender, b.receiver, b.message});
                    states.push_back(b.continuation);
                    walk(b.continuation);
                    states.pop_back();
                    labels.pop_back();
                }
                return;
        }
    }

    void emit(bool maximal, bool hit_bound) {
        out.push_back(GlobalRun{states, labels, maximal, hit_bound});
    }
};

std::vector<AsyncEvent> run_projection(const GlobalRun& run, const Role& p) {
    std::vector<AsyncEvent> out;
    for (const auto& l : run.labels) {
        if (l.sender == p) out.push_back(send_event(p, l.receiver, l.message));
        if (l.receiver == p) out.push_back(receive_event(p, l.sender, l.message));
    }
    return out;
}

bool is_prefix(const std::vector<AsyncEvent>& u, const std::vector<AsyncEvent>& v) {
    if (u.size() > v.size()) return false;
    return std::equal(u.begin(), u.end(), v.begin());
}

}  // namespace

std::vector<GlobalRun> possible_runs(const GlobalType& g, const std::vector<AsyncEvent>& w,
                                     const Role& p, int unroll) {
    if (unroll < 1) throw std::invalid_argument("possible_runs: unroll must be >= 1");
    RunEnumerator en{g, unroll};
    en.states.push_back(g.root());
    en.walk(g.root());
    const std::vector<AsyncEvent> wp = project_word(w, p);
    std::vector<GlobalRun> out;
    for (auto& run : en.out) {
        if (is_prefix(wp, run_projection(run, p))) out.push_back(std::move(run));
    }
    return out;
}

std::vector<GlobalRun> intersection_runs(const GlobalType& g, const std::vector<AsyncEvent>& w,
                                         int unroll) {
    const std::vector<Role> roles = roles_of(g);
    if (roles.empty()) return possible_runs(g, w, Role{"?"}, unroll);
    std::vector<GlobalRun> acc = possible_runs(g, w, roles.front(), unroll);
    for (std::size_t i = 1; i < roles.size(); ++i) {
        const std::vector<GlobalRun> next = possible_runs(g, w, roles[i], unroll);
        std::vector<GlobalRun> merged;
        for (const auto& run : acc) {
            if (std::find(next.begin(), next.end(), run) != next.end()) merged.push_back(run);
        }
        acc = std::move(merged);
    }
    return acc;
}

RunSplit unique_splitting(const GlobalRun& run, const Role& p, const std::vector<AsyncEvent>& w) {
    const std::vector<AsyncEvent> wp = project_word(w, p);
    if (!is_prefix(wp, run_projection(run, p))) {
        throw std::invalid_argument("unique_splitting: run is not consistent with the word");
    }
    // Longest run prefix whose projected split trace is a prefix of wp.
    std::size_t cut = 0;
    std::size_t matched = 0;
    for (std::size_t i = 0; i < run.labels.size(); ++i) {
        const SyncEvent& l = run.labels[i];
        std::optional<AsyncEvent> e;
        if (l.sender == p) e = send_event(p, l.receiver, l.message);
        if (l.receiver == p) e = receive_event(p, l.sender, l.message);
        if (e) {
            if (matched >= wp.size() || !(wp[matched] == *e)) break;
            ++matched;
        }
        cut = i + 1;
    }

    RunSplit split;
    split.alpha.states.assign(run.states.begin(), run.states.begin() + static_cast<long>(cut) + 1);
    split.alpha.labels.assign(run.labels.begin(), run.labels.begin() + static_cast<long>(cut));
    if (cut == run.labels.size()) {
        split.alpha.maximal = run.maximal;
        split.alpha.hit_unroll_bound = run.hit_unroll_bound;
        return split;
    }
    split.label = run.labels[cut];
    split.beta.states.assign(run.states.begin() + static_cast<long>(cut) + 1, run.states.end());
    split.beta.labels.assign(run.labels.begin() + static_cast<long>(cut) + 1, run.labels.end());
    split.beta.maximal = run.maximal;
    split.beta.hit_unroll_bound = run.hit_unroll_bound;
    return split;
}

std::string to_string(const std::vector<AsyncEvent>& w) {
    std::ostringstream out;
    bool first = true;
    for (const auto& x : w) {
        if (!first) out << " ";
        first = false;
        out << to_string(x);
    }
    return out.str();
}

}  // namespace mst
