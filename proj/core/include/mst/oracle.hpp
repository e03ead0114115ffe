#ifndef MST_ORACLE_HPP
#define MST_ORACLE_HPP

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mst/automata.hpp"
#include "mst/global_type.hpp"
#include "mst/machine.hpp"

namespace mst {

/// A communicating state machine: one deterministic local machine per role,
/// FIFO channels per ordered role pair. `order` fixes the enumeration order
/// used by the executor.
struct Csm {
    std::vector<Role> order;
    std::map<Role, LocalMachine> machines;

    int role_index(const Role& r) const;
};

/// The canonical implementation {C(g, p)}_p with roles in declaration order.
Csm subset_csm(const GlobalType& g);

/// Subset CSM with one role's machine substituted.
Csm subset_context(const GlobalType& g, const LocalMachine& candidate);

/// Global state vector plus channel contents. Channels hold only non-empty
/// queues, keyed by (sender index, receiver index) in csm order.
struct Configuration {
    std::vector<int> states;
    std::map<std::pair<int, int>, std::vector<Message>> channels;

    auto operator<=>(const Configuration&) const = default;
};

Configuration initial_configuration(const Csm& csm);

bool is_final(const Csm& csm, const Configuration& c);

enum class StepErrorKind { NoSuchTransition, EmptyOrMismatchedChannel };

struct StepError : std::runtime_error {
    StepError(StepErrorKind kind, std::string msg);
    StepErrorKind kind;
};

/// One CSM move: a send appends to its channel, a receive pops a matching
/// head. Throws StepError when the event is not enabled.
Configuration step(const Csm& csm, const Configuration& c, const AsyncEvent& x);

/// Events enabled under unbounded-channel semantics, in canonical order:
/// sends before receives, roles in declaration order, messages lexicographic.
std::vector<AsyncEvent> enabled_events(const Csm& csm, const Configuration& c);

struct DeadlockInfo {
    Configuration config;
    std::vector<AsyncEvent> trace;
};

struct ExplorationReport {
    std::size_t reachable = 0;
    std::vector<DeadlockInfo> deadlocks;
    std::vector<std::vector<AsyncEvent>> terminated;  // one trace per final configuration
    bool truncated = false;                           // a bound cut off enabled behavior
    bool terminated_cap_hit = false;
};

/// Breadth-first enumeration of configurations reachable by at most
/// depth_bound events with every channel at most channel_bound long.
/// A deadlock is a non-final configuration with no transition enabled under
/// unbounded semantics; moves suppressed only by a bound set `truncated`
/// instead.
ExplorationReport explore(const Csm& csm, int depth_bound, int channel_bound,
                          std::size_t terminated_cap = 10000);

struct TraceCompareResult {
    bool equal_prefixes = true;
    std::optional<std::vector<AsyncEvent>> counterexample;
};

/// Compares the trace sets of length <= k (prefix semantics, channel bound
/// k); the counterexample is a shortest word in the symmetric difference.
TraceCompareResult bounded_trace_compare(const Csm& a, const Csm& b, int k);

/// One-directional variant: counterexample is a shortest trace of a that is
/// not a trace of b.
TraceCompareResult bounded_trace_included(const Csm& a, const Csm& b, int k);

/// All traces of length <= k explicitly (prefix-closed set). Intended for
/// desk-scale closure checks; grows with the interleaving count.
std::set<std::vector<AsyncEvent>> bounded_traces(const Csm& csm, int k, int channel_bound);

/// Words one indistinguishability swap away: adjacent independent sends,
/// adjacent independent receives, send/receive of unrelated pairs, and the
/// counted send/receive swap on a backlogged channel.
std::set<std::vector<AsyncEvent>> indist_neighbors(const std::vector<AsyncEvent>& w);

struct ClosureViolation {
    std::vector<AsyncEvent> word;
    std::vector<AsyncEvent> neighbor;
};

/// Pairs (w, n) with w in traces, n a neighbor of w within the length bound
/// but missing from traces. Empty means closed at this bound.
std::vector<ClosureViolation> closure_check(const std::set<std::vector<AsyncEvent>>& traces, int k);

/// A run of the global automaton with epsilon steps elided: states[0] is the
/// root; states[i+1] is the node entered by labels[i].
struct GlobalRun {
    std::vector<NodeId> states;
    std::vector<SyncEvent> labels;
    bool maximal = false;           // ended at an End node
    bool hit_unroll_bound = false;  // stopped by the unroll bound

    auto operator<=>(const GlobalRun&) const = default;
};

/// Maximal-within-bound runs whose split-trace projection onto p extends
/// w's p-view. Each recursion body is entered at most `unroll` times.
std::vector<GlobalRun> possible_runs(const GlobalType& g, const std::vector<AsyncEvent>& w,
                                     const Role& p, int unroll);

/// Intersection over all roles of g.
std::vector<GlobalRun> intersection_runs(const GlobalType& g, const std::vector<AsyncEvent>& w,
                                         int unroll);

struct RunSplit {
    GlobalRun alpha;
    std::optional<SyncEvent> label;  // empty iff alpha is the whole run
    GlobalRun beta;
};

/// Splits the run at the longest prefix whose projected split trace is a
/// prefix of w's p-view. Throws std::invalid_argument when the run is not
/// consistent with w.
RunSplit unique_splitting(const GlobalRun& run, const Role& p, const std::vector<AsyncEvent>& w);

std::string to_string(const std::vector<AsyncEvent>& w);

}  // namespace mst

#endif
