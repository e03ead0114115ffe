#ifndef MST_MACHINE_HPP
#define MST_MACHINE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mst/global_type.hpp"
#include "mst/types.hpp"

namespace mst {

/// Deterministic finite state machine over one role's asynchronous alphabet.
/// States produced by the subset construction additionally carry the set of
/// global-automaton nodes they stand for.
struct LocalMachine {
    Role role;
    std::vector<std::string> state_names;
    std::vector<std::set<NodeId>> state_subsets;  // parallel to state_names, or empty
    int initial = 0;
    std::set<int> finals;
    std::map<std::pair<int, AsyncEvent>, int> transitions;

    int state_count() const { return static_cast<int>(state_names.size()); }
    bool is_final(int s) const { return finals.count(s) != 0; }

    std::optional<int> next(int s, const AsyncEvent& x) const;

    /// Outgoing transitions of s, ordered by event.
    std::vector<std::pair<AsyncEvent, int>> outgoing(int s) const;

    bool has_send_from(int s) const;

    std::optional<int> state_index(const std::string& name) const;

    const std::set<NodeId>& subset_of(int s) const;

    bool operator==(const LocalMachine&) const = default;
};

struct MachineParseError : std::runtime_error {
    MachineParseError(std::string msg, int line);
    int line;
};

/// Machine text format, one declaration per line:
///   role <ident>
///   state <ident> [initial] [final]
///   <src> <event> <dst>      with <event> of the form p>q!m or p<q?m
/// '#' starts a comment. Rejects nondeterminism, events whose active role
/// differs from the declared role, and references to undeclared states.
LocalMachine parse_machine(const std::string& text);

/// Inverse of parse_machine up to comments; subset annotations become
/// comments so the output stays parseable.
std::string machine_to_text(const LocalMachine& m);

}  // namespace mst

#endif
